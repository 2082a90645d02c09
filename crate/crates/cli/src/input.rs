//! JSON inputs: a differential form `{"dim": 4, "form": "..."}` or a field
//! configuration keyed by component name (`Ex` … `jz`, `rho`).

use std::fs;
use std::path::Path;

use serde_json::Value;

use descent_core::maxwell::{EMConfig, EMConfigText};
use descent_core::Form;

use crate::Failure;

pub enum Input {
    Form(Form),
    Config(Box<EMConfig>),
}

pub fn load(path: &Path) -> Result<Input, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Input, Failure> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("invalid JSON: {e}")))?;
    let Value::Object(map) = &value else {
        return Err(Failure::usage("expected a JSON object"));
    };
    if map.contains_key("form") {
        let form = map["form"]
            .as_str()
            .ok_or_else(|| Failure::usage("\"form\" must be a string"))?;
        let dim = match map.get("dim") {
            None => 4,
            Some(d) => d
                .as_u64()
                .ok_or_else(|| Failure::usage("\"dim\" must be a positive integer"))?
                as usize,
        };
        if let Some(k) = map.keys().find(|k| *k != "form" && *k != "dim") {
            return Err(Failure::usage(format!("unknown key {k:?} in form input")));
        }
        if !(2..=8).contains(&dim) {
            return Err(Failure::usage(format!("dimension {dim} outside 2..=8")));
        }
        let w = Form::parse(form, dim).map_err(|e| Failure::usage(e.to_string()))?;
        return Ok(Input::Form(w));
    }
    let fields: EMConfigText = serde_json::from_value(value)
        .map_err(|e| Failure::usage(format!("invalid configuration: {e}")))?;
    let c = EMConfig::from_text(&fields).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(Input::Config(Box::new(c)))
}
