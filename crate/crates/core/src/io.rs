//! JSON state schema and number formatting shared by the CLI.
//!
//! ```text
//! {"rho00": 0.5, "re01": 0.25, "im01": 0}                 mixed state
//! {"pure": {"c0": [re, im], "c1": [re, im]}}              pure state
//! {"dsum": {"p": 0.5, "phi1": <pure>, "phi2": <pure>}}    direct sum
//! ```
//!
//! `<pure>` inside `dsum` is the bare `{"c0": .., "c1": ..}` object; the
//! `{"pure": ..}` wrapper is accepted as well. State components are written
//! at full round-trip precision; scalar results are rounded to 12
//! significant digits.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::roof::RoofResult;
use crate::state::{DirectSumState, Ensemble, PureQubit, QubitState};
use crate::transforms::FeasibilityVerdict;

/// Significant digits for reported scalars.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MixedJson {
    rho00: f64,
    re01: f64,
    #[serde(default)]
    im01: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PureJson {
    c0: [f64; 2],
    c1: [f64; 2],
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum BlockJson {
    Wrapped { pure: PureJson },
    Bare(PureJson),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DsumJson {
    p: f64,
    phi1: BlockJson,
    phi2: BlockJson,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
enum StateJson {
    Mixed(MixedJson),
    Pure { pure: PureJson },
    DirectSum { dsum: DsumJson },
}

/// Any state the CLI accepts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParsedState {
    Mixed(QubitState),
    Pure(PureQubit),
    DirectSum(DirectSumState),
}

impl ParsedState {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedState::Mixed(_) => "mixed",
            ParsedState::Pure(_) => "pure",
            ParsedState::DirectSum(_) => "dsum",
        }
    }

    /// Density matrix for qubit inputs; `None` for direct sums.
    pub fn as_qubit(&self) -> Option<QubitState> {
        match self {
            ParsedState::Mixed(s) => Some(*s),
            ParsedState::Pure(phi) => Some(phi.density()),
            ParsedState::DirectSum(_) => None,
        }
    }
}

fn pure_from_json(p: &PureJson) -> Result<PureQubit> {
    PureQubit::new(
        Complex::new(p.c0[0], p.c0[1]),
        Complex::new(p.c1[0], p.c1[1]),
    )
}

/// Adding `0.0` maps `-0.0` to `0.0` and leaves every other value alone.
fn unsigned_zero(x: f64) -> f64 {
    x + 0.0
}

fn pure_to_json(phi: &PureQubit) -> PureJson {
    let z = unsigned_zero;
    PureJson {
        c0: [z(phi.c0().re), z(phi.c0().im)],
        c1: [z(phi.c1().re), z(phi.c1().im)],
    }
}

/// Parses and validates a state document.
pub fn parse_state(text: &str) -> Result<ParsedState> {
    let doc: StateJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match doc {
        StateJson::Mixed(m) => Ok(ParsedState::Mixed(QubitState::new(
            m.rho00,
            Complex::new(m.re01, m.im01),
        )?)),
        StateJson::Pure { pure } => Ok(ParsedState::Pure(pure_from_json(&pure)?)),
        StateJson::DirectSum { dsum } => {
            let block = |b: &BlockJson| match b {
                BlockJson::Wrapped { pure } | BlockJson::Bare(pure) => pure_from_json(pure),
            };
            Ok(ParsedState::DirectSum(DirectSumState::new(
                dsum.p,
                block(&dsum.phi1)?,
                block(&dsum.phi2)?,
            )?))
        }
    }
}

/// Serializes a state in the input schema, losslessly.
pub fn state_to_json(state: &ParsedState) -> Value {
    match state {
        ParsedState::Mixed(s) => json!({
            "rho00": unsigned_zero(s.rho00()),
            "re01": unsigned_zero(s.rho01().re),
            "im01": unsigned_zero(s.rho01().im),
        }),
        ParsedState::Pure(phi) => json!({ "pure": pure_to_json(phi) }),
        ParsedState::DirectSum(d) => json!({
            "dsum": {
                "p": unsigned_zero(d.p()),
                "phi1": pure_to_json(d.phi1()),
                "phi2": pure_to_json(d.phi2()),
            }
        }),
    }
}

/// Decimal rendering with [`SIGNIFICANT_DIGITS`] significant digits and
/// trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x.is_infinite() {
            if x > 0.0 {
                "inf".into()
            } else {
                "-inf".into()
            }
        } else {
            "0".into()
        };
    }
    // Round in scientific form first so the exponent accounts for carries
    // such as 9.9999999999996 -> 10.
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific format carries an exponent");
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    let rounded: f64 = sci.parse().expect("round-trips");
    let mut s = format!("{:.*}", decimals, rounded);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits, as a JSON number.
pub fn sig_number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format_sig(x).parse().expect("decimal rendering parses");
    json!(rounded)
}

/// `{"value": v}`.
pub fn value_json(value: f64) -> Value {
    json!({ "value": sig_number(value) })
}

/// Ensemble as `[{"weight": w, "state": {"pure": ..}}, ..]`.
pub fn ensemble_to_json(ensemble: &Ensemble) -> Value {
    Value::Array(
        ensemble
            .members()
            .iter()
            .map(|(w, phi)| {
                json!({
                    "weight": w,
                    "state": state_to_json(&ParsedState::Pure(*phi)),
                })
            })
            .collect(),
    )
}

/// `{"value", "witness", "closed_form", "gap"}`; the last two are `null` when
/// the measure has no closed form.
pub fn roof_to_json(result: &RoofResult) -> Value {
    let (closed, gap) = match result.gap_report {
        Some(g) => (sig_number(g.closed_form), sig_number(g.gap)),
        None => (Value::Null, Value::Null),
    };
    json!({
        "value": sig_number(result.value),
        "witness": ensemble_to_json(&result.witness),
        "closed_form": closed,
        "gap": gap,
    })
}

/// `{"feasible", "witness_mu", "lhs", "rhs"}`.
pub fn verdict_to_json(v: &FeasibilityVerdict) -> Value {
    json!({
        "feasible": v.feasible,
        "witness_mu": v.witness_mu.map(sig_number).unwrap_or(Value::Null),
        "lhs": sig_number(v.lhs),
        "rhs": sig_number(v.rhs),
    })
}

/// CSV with header `c_l1,value` and LF line endings.
pub fn curve_to_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("c_l1,value\n");
    for (c, v) in points {
        out.push_str(&format_sig(*c));
        out.push(',');
        out.push_str(&format_sig(*v));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_each_kind() {
        let s = parse_state(r#"{"rho00":0.5,"re01":0.25,"im01":0}"#).unwrap();
        assert_eq!(
            s,
            ParsedState::Mixed(QubitState::from_real(0.5, 0.25).unwrap())
        );
        let s = parse_state(r#"{"rho00":0.5,"re01":0.25}"#).unwrap();
        assert_eq!(s.kind(), "mixed");

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let text = format!(r#"{{"pure":{{"c0":[{r},0],"c1":[0,{r}]}}}}"#);
        let s = parse_state(&text).unwrap();
        assert_eq!(s.kind(), "pure");
        assert_eq!(s.as_qubit().unwrap().rho01().im, -0.5000000000000001);

        let text = format!(
            r#"{{"dsum":{{"p":0.25,"phi1":{{"c0":[1,0],"c1":[0,0]}},"phi2":{{"pure":{{"c0":[{r},0],"c1":[{r},0]}}}}}}}}"#
        );
        let s = parse_state(&text).unwrap();
        match s {
            ParsedState::DirectSum(d) => {
                assert_eq!(d.p(), 0.25);
                assert_eq!(d.phi1(), &PureQubit::zero());
            }
            _ => panic!("expected direct sum"),
        }
        assert!(s.as_qubit().is_none());
    }

    #[test]
    fn rejects_invalid_documents() {
        assert!(matches!(parse_state("{}"), Err(Error::Parse(_))));
        assert!(matches!(parse_state("not json"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_state(r#"{"rho00":0.3,"re01":0.5,"im01":0}"#),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            parse_state(r#"{"pure":{"c0":[1,0],"c1":[1,0]}}"#),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            parse_state(
                r#"{"dsum":{"p":2,"phi1":{"c0":[1,0],"c1":[0,0]},"phi2":{"c0":[1,0],"c1":[0,0]}}}"#
            ),
            Err(Error::WeightRange(_))
        ));
        assert!(parse_state(r#"{"rho00":0.5,"re01":0.1,"im01":0,"extra":1}"#).is_err());
    }

    #[test]
    fn sig_digit_formatting() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(1.5f64.log2()), "0.584962500721");
        assert_eq!(format_sig((1.0 - 0.75f64.sqrt()) / 2.0), "0.0669872981078");
        assert_eq!(format_sig(-0.016), "-0.016");
        assert_eq!(format_sig(9.9999999999996), "10");
        assert_eq!(format_sig(123456.7890123456), "123456.789012");
        assert_eq!(format_sig(1e-20), "0.00000000000000000001");
    }

    #[test]
    fn csv_layout() {
        let csv = curve_to_csv(&[(0.0, 0.0), (0.5, 1.5f64.log2()), (1.0, 1.0)]);
        assert_eq!(csv, "c_l1,value\n0,0\n0.5,0.584962500721\n1,1\n");
    }

    fn any_state() -> impl Strategy<Value = ParsedState> {
        let mixed = (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..std::f64::consts::TAU).prop_map(
            |(rho00, frac, phase)| {
                let r = frac * (rho00 * (1.0 - rho00)).sqrt();
                ParsedState::Mixed(QubitState::new(rho00, Complex::from_polar(r, phase)).unwrap())
            },
        );
        let pure = (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
            .prop_filter_map("nonzero", |(a, b, c, d)| {
                PureQubit::normalized(Complex::new(a, b), Complex::new(c, d)).ok()
            });
        let dsum = (0.0f64..=1.0, pure.clone(), pure.clone())
            .prop_map(|(p, a, b)| ParsedState::DirectSum(DirectSumState::new(p, a, b).unwrap()));
        prop_oneof![mixed, pure.prop_map(ParsedState::Pure), dsum]
    }

    proptest! {
        #[test]
        fn printed_states_reparse_identically(state in any_state()) {
            let text = state_to_json(&state).to_string();
            let back = parse_state(&text).unwrap();
            prop_assert_eq!(back, state);
        }

        #[test]
        fn sig_rounding_is_stable(x in -1e6f64..1e6) {
            let once = format_sig(x);
            let twice = format_sig(once.parse().unwrap());
            prop_assert_eq!(&once, &twice);
            prop_assert!((once.parse::<f64>().unwrap() - x).abs() <= 1e-11 * x.abs().max(1e-300));
        }
    }
}
