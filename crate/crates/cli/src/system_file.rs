//! The plain-text system file format: one directive per line.
//!
//! ```text
//! # comment
//! vars x,y
//! gen x
//! gen y - x^2
//! mode preordering        (optional; default quadratic-module)
//! ```

use qmstab_core::{parse_polynomial, GeneratorSystem, VariableContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    QuadraticModule,
    Preordering,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::QuadraticModule => "quadratic-module",
            Mode::Preordering => "preordering",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SystemFile {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub mode: Mode,
}

pub fn parse_system_file(text: &str) -> Result<SystemFile, String> {
    let mut variables: Option<Vec<String>> = None;
    let mut generators = Vec::new();
    let mut mode = Mode::QuadraticModule;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (directive, rest) = match line.split_once(char::is_whitespace) {
            Some((d, r)) => (d, r.trim()),
            None => (line, ""),
        };
        match directive {
            "vars" => {
                if variables.is_some() {
                    return Err(format!("line {}: duplicate `vars` directive", lineno + 1));
                }
                let names: Vec<String> = rest
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                if names.is_empty() {
                    return Err(format!("line {}: `vars` needs at least one name", lineno + 1));
                }
                variables = Some(names);
            }
            "gen" => {
                if variables.is_none() {
                    return Err(format!(
                        "line {}: `gen` before the `vars` directive",
                        lineno + 1
                    ));
                }
                if rest.is_empty() {
                    return Err(format!("line {}: `gen` needs a polynomial", lineno + 1));
                }
                generators.push(rest.to_string());
            }
            "mode" => {
                mode = match rest {
                    "preordering" => Mode::Preordering,
                    "quadratic-module" => Mode::QuadraticModule,
                    other => {
                        return Err(format!("line {}: unknown mode `{}`", lineno + 1, other))
                    }
                };
            }
            other => {
                return Err(format!("line {}: unknown directive `{}`", lineno + 1, other))
            }
        }
    }

    let variables = variables.ok_or_else(|| "missing `vars` directive".to_string())?;
    if generators.is_empty() {
        return Err("a system file needs at least one `gen` line".to_string());
    }
    Ok(SystemFile {
        variables,
        generators,
        mode,
    })
}

/// Parses the generator strings against the declared variables and
/// validates the system invariants.
pub fn build_system(file: &SystemFile) -> Result<GeneratorSystem, String> {
    let ctx = VariableContext::new(file.variables.clone()).map_err(|e| e.to_string())?;
    let mut polys = Vec::with_capacity(file.generators.len());
    for (i, text) in file.generators.iter().enumerate() {
        let p = parse_polynomial(text, &ctx)
            .map_err(|e| format!("generator {}: {} (in `{}`)", i + 1, e, text))?;
        polys.push(p);
    }
    GeneratorSystem::new(ctx, polys).map_err(|e| e.to_string())
}
