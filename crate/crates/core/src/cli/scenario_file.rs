//! Scenario files: JSON in, validated [`Scenario`] out, and back.
//!
//! ```json
//! {
//!   "constants": {"hbar": 1, "mass": 1, "c": 1, "omega": 1},
//!   "preset": "energy-aligned",
//!   "model": "oscillator",
//!   "initial": {"level": 0},
//!   "steps": [{"evolve": 1.0}, {"jump": {"from": 0, "to": 1, "at_time": 0.5}}],
//!   "tolerances": {"constraint_tol": 1e-6, "eigen_tol": 1e-9}
//! }
//! ```
//!
//! `preset` may instead be an object `{"q": {"n", "origin", "spacing"}, "t": {...}}`.
//! Only `model` is required; the rest default to unit constants, the
//! energy-aligned preset, level 0, no steps and tolerances 1e-6 / 1e-9.

use serde_json::{json, Map, Value};

use crate::axes::{AxisGrid, PhysicalConstants, Preset};
use crate::dynamics::{GridSpec, Initial, Scenario, Step, Tolerances};
use crate::error::{Error, Result};
use crate::models::ModelKind;
use crate::numkernel::C64;

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let sc = scenario_from_value(&value)?;
    sc.validate()?;
    Ok(sc)
}

pub fn serialize_scenario(sc: &Scenario) -> String {
    let mut s = serde_json::to_string_pretty(&scenario_to_value(sc)).expect("plain JSON values");
    s.push('\n');
    s
}

fn object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::validation(field, "expected an object"))
}

fn reject_unknown(map: &Map<String, Value>, prefix: &str, allowed: &[&str]) -> Result<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            let field = if prefix.is_empty() {
                key.clone()
            } else {
                format!("{prefix}.{key}")
            };
            return Err(Error::validation(field, "unknown key"));
        }
    }
    Ok(())
}

fn number(v: &Value, field: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::validation(field, "expected a finite number"))
}

fn count(v: &Value, field: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::validation(field, "expected a non-negative integer"))
}

fn required<'a>(map: &'a Map<String, Value>, key: &str, field: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| Error::validation(field, "missing required key"))
}

fn scenario_from_value(v: &Value) -> Result<Scenario> {
    let top = object(v, "scenario")?;
    reject_unknown(
        top,
        "",
        &["constants", "preset", "model", "initial", "steps", "tolerances"],
    )?;

    let constants = match top.get("constants") {
        Some(c) => parse_constants(c)?,
        None => PhysicalConstants::unit(),
    };
    let grids = match top.get("preset") {
        None => GridSpec::Preset(Preset::EnergyAligned),
        Some(Value::String(s)) => GridSpec::Preset(s.parse()?),
        Some(g @ Value::Object(_)) => parse_explicit_grids(g)?,
        Some(_) => {
            return Err(Error::validation(
                "preset",
                "expected a preset name or an object with q and t grids",
            ))
        }
    };
    let model: ModelKind = required(top, "model", "model")?
        .as_str()
        .ok_or_else(|| Error::validation("model", "expected a string"))?
        .parse()?;
    let initial = match top.get("initial") {
        Some(i) => parse_initial(i)?,
        None => Initial::Level(0),
    };
    let steps = match top.get("steps") {
        Some(s) => parse_steps(s)?,
        None => Vec::new(),
    };
    let tolerances = match top.get("tolerances") {
        Some(t) => parse_tolerances(t)?,
        None => Tolerances::default(),
    };
    Ok(Scenario {
        constants,
        grids,
        model,
        initial,
        steps,
        tolerances,
    })
}

fn parse_constants(v: &Value) -> Result<PhysicalConstants> {
    let m = object(v, "constants")?;
    reject_unknown(m, "constants", &["hbar", "mass", "c", "omega"])?;
    let get = |key: &str| {
        let field = format!("constants.{key}");
        number(required(m, key, &field)?, &field)
    };
    PhysicalConstants::new(get("hbar")?, get("mass")?, get("c")?, get("omega")?)
}

fn parse_grid(v: &Value, field: &str, time: bool) -> Result<AxisGrid> {
    let m = object(v, field)?;
    reject_unknown(m, field, &["n", "origin", "spacing"])?;
    let n = count(required(m, "n", &format!("{field}.n"))?, &format!("{field}.n"))?;
    let origin = number(
        required(m, "origin", &format!("{field}.origin"))?,
        &format!("{field}.origin"),
    )?;
    let spacing = number(
        required(m, "spacing", &format!("{field}.spacing"))?,
        &format!("{field}.spacing"),
    )?;
    let grid = if time {
        AxisGrid::time(n, origin, spacing)
    } else {
        AxisGrid::position(n, origin, spacing)
    };
    grid.map_err(|e| match e {
        Error::Validation { field: f, reason } => Error::validation(format!("{field}.{f}"), reason),
        other => other,
    })
}

fn parse_explicit_grids(v: &Value) -> Result<GridSpec> {
    let m = object(v, "preset")?;
    reject_unknown(m, "preset", &["q", "t"])?;
    let q = parse_grid(required(m, "q", "preset.q")?, "preset.q", false)?;
    let t = parse_grid(required(m, "t", "preset.t")?, "preset.t", true)?;
    Ok(GridSpec::Explicit { q, t })
}

fn parse_initial(v: &Value) -> Result<Initial> {
    let m = object(v, "initial")?;
    if m.len() != 1 {
        return Err(Error::validation(
            "initial",
            "expected exactly one of level, energy, amplitudes",
        ));
    }
    let (key, val) = m.iter().next().expect("one entry");
    match key.as_str() {
        "level" => Ok(Initial::Level(count(val, "initial.level")?)),
        "energy" => Ok(Initial::Energy(number(val, "initial.energy")?)),
        "amplitudes" => {
            let arr = val
                .as_array()
                .ok_or_else(|| Error::validation("initial.amplitudes", "expected an array"))?;
            arr.iter()
                .enumerate()
                .map(|(i, z)| {
                    let field = format!("initial.amplitudes[{i}]");
                    match z.as_array().map(Vec::as_slice) {
                        Some([re, im]) => Ok(C64::new(number(re, &field)?, number(im, &field)?)),
                        _ => Err(Error::validation(field, "expected [re, im]")),
                    }
                })
                .collect::<Result<Vec<_>>>()
                .map(Initial::Amplitudes)
        }
        other => Err(Error::validation(format!("initial.{other}"), "unknown key")),
    }
}

fn parse_steps(v: &Value) -> Result<Vec<Step>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::validation("steps", "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(idx, s)| parse_step(s, idx))
        .collect()
}

fn parse_step(v: &Value, idx: usize) -> Result<Step> {
    let prefix = format!("steps[{idx}]");
    let m = object(v, &prefix)?;
    if m.len() != 1 {
        return Err(Error::validation(prefix, "expected exactly one of evolve, jump"));
    }
    let (key, val) = m.iter().next().expect("one entry");
    match key.as_str() {
        "evolve" => Ok(Step::Evolve {
            dt: number(val, &format!("{prefix}.evolve"))?,
        }),
        "jump" => {
            let field = format!("{prefix}.jump");
            let j = object(val, &field)?;
            reject_unknown(j, &field, &["from", "to", "at_time"])?;
            let from = count(required(j, "from", &format!("{field}.from"))?, &format!("{field}.from"))?;
            let to = count(required(j, "to", &format!("{field}.to"))?, &format!("{field}.to"))?;
            let at_time = number(
                required(j, "at_time", &format!("{field}.at_time"))?,
                &format!("{field}.at_time"),
            )?;
            if from == to {
                return Err(Error::validation(
                    field,
                    format!("step {idx}: from and to are both level {from}"),
                ));
            }
            Ok(Step::Jump { from, to, at_time })
        }
        other => Err(Error::validation(format!("{prefix}.{other}"), "unknown key")),
    }
}

fn parse_tolerances(v: &Value) -> Result<Tolerances> {
    let m = object(v, "tolerances")?;
    reject_unknown(m, "tolerances", &["constraint_tol", "eigen_tol"])?;
    let mut t = Tolerances::default();
    if let Some(x) = m.get("constraint_tol") {
        t.constraint_tol = number(x, "tolerances.constraint_tol")?;
    }
    if let Some(x) = m.get("eigen_tol") {
        t.eigen_tol = number(x, "tolerances.eigen_tol")?;
    }
    Ok(t)
}

fn grid_value(g: &AxisGrid) -> Value {
    json!({"n": g.n(), "origin": g.origin(), "spacing": g.spacing()})
}

fn scenario_to_value(sc: &Scenario) -> Value {
    let k = &sc.constants;
    let preset = match &sc.grids {
        GridSpec::Preset(p) => json!(p.as_str()),
        GridSpec::Explicit { q, t } => json!({"q": grid_value(q), "t": grid_value(t)}),
    };
    let initial = match &sc.initial {
        Initial::Level(n) => json!({"level": n}),
        Initial::Energy(e) => json!({"energy": e}),
        Initial::Amplitudes(a) => {
            json!({"amplitudes": a.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>()})
        }
    };
    let steps: Vec<Value> = sc
        .steps
        .iter()
        .map(|s| match *s {
            Step::Evolve { dt } => json!({"evolve": dt}),
            Step::Jump { from, to, at_time } => {
                json!({"jump": {"from": from, "to": to, "at_time": at_time}})
            }
        })
        .collect();
    json!({
        "constants": {"hbar": k.hbar, "mass": k.mass, "c": k.c, "omega": k.omega},
        "preset": preset,
        "model": sc.model.as_str(),
        "initial": initial,
        "steps": steps,
        "tolerances": {
            "constraint_tol": sc.tolerances.constraint_tol,
            "eigen_tol": sc.tolerances.eigen_tol,
        },
    })
}
