//! `--config FILE`: a JSON object whose entries become flags placed right
//! after the subcommand. Flags also given on the command line win.

use std::ffi::OsString;

use serde_json::Value;

pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut args: Vec<String> = args
        .into_iter()
        .map(|a| a.into_string().map_err(|a| format!("argument {a:?} is not valid UTF-8")))
        .collect::<Result<_, _>>()?;
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args.into_iter().map(OsString::from).collect());
    };
    let path = match args[pos].strip_prefix("--config=") {
        Some(p) => {
            let p = p.to_string();
            args.remove(pos);
            p
        }
        None => {
            if pos + 1 >= args.len() {
                return Err("--config needs a file".into());
            }
            args.remove(pos);
            args.remove(pos)
        }
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    if args.len() < 3 || args[1].starts_with('-') || args[2].starts_with('-') {
        return Err("--config must follow a subcommand such as `trace sweep`".into());
    }
    let given: Vec<&str> = args[3..]
        .iter()
        .filter(|a| a.starts_with("--"))
        .map(|a| a.split('=').next().unwrap_or(a))
        .collect();
    let flags: Vec<String> = flags_from_json(&text)
        .map_err(|e| format!("config {path}: {e}"))?
        .into_iter()
        .filter(|(flag, _)| !given.contains(&flag.as_str()))
        .flat_map(|(flag, value)| std::iter::once(flag).chain(value))
        .collect();
    args.splice(3..3, flags);
    Ok(args.into_iter().map(OsString::from).collect())
}

/// `(flag, value)` pairs; switches have no value.
fn flags_from_json(text: &str) -> Result<Vec<(String, Option<String>)>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let Value::Object(map) = value else {
        return Err("expected a JSON object".into());
    };
    let mut flags = Vec::new();
    for (key, value) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => flags.push((flag, None)),
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect::<Result<_, _>>()?;
                flags.push((flag, Some(parts.join(","))));
            }
            other => flags.push((flag, Some(scalar(&other)?))),
        }
    }
    Ok(flags)
}

fn scalar(value: &Value) -> Result<String, String> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(format!("unsupported config value {other}")),
    }
}
