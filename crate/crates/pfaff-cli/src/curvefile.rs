//! Plain-text curve files. Order-sensitive:
//!
//! ```text
//! vars: t
//! x = t
//! y = t^2
//! z = 1/3*t^3
//! t_start = 0
//! t_end = 1
//! ```
//!
//! One coordinate line per target variable, in the target space's declared
//! order, followed by the parameter bounds.

use pfaff_core::map::PolyMap;
use pfaff_core::poly::Poly;
use pfaff_core::scalar::CScalar;
use pfaff_core::space::VarSpace;

use crate::expr::{parse_poly_at, parse_scalar_at, ExprError};

#[derive(Debug)]
pub struct CurveFile {
    pub map: PolyMap,
    pub t_start: CScalar,
    pub t_end: CScalar,
}

fn syntax(line: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        line,
        col: 1,
        message: message.into(),
    }
}

pub fn parse_curve_file(text: &str, target: &VarSpace) -> Result<CurveFile, ExprError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "empty curve file"))?;
    let param = header
        .strip_prefix("vars:")
        .map(str::trim)
        .ok_or_else(|| syntax(lineno, "expected a 'vars: t' header"))?;
    if param.is_empty() || param.contains(',') {
        return Err(syntax(
            lineno,
            "curves have exactly one parameter variable",
        ));
    }
    let source = VarSpace::new([param.to_string()]).map_err(ExprError::Core)?;

    let mut comps: Vec<Poly> = Vec::with_capacity(target.dim());
    for i in 0..target.dim() {
        let (lineno, line) = lines.next().ok_or_else(|| {
            syntax(
                target.dim() + 2,
                format!("missing coordinate line for {}", target.name(i)),
            )
        })?;
        let (name, rhs) = line
            .split_once('=')
            .ok_or_else(|| syntax(lineno, "expected '<coordinate> = <polynomial>'"))?;
        if name.trim() != target.name(i) {
            return Err(syntax(
                lineno,
                format!(
                    "expected coordinate {} (declared order), found {}",
                    target.name(i),
                    name.trim()
                ),
            ));
        }
        comps.push(parse_poly_at(rhs.trim(), &source, lineno)?);
    }

    let mut bound = |key: &str| -> Result<CScalar, ExprError> {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| syntax(target.dim() + 2, format!("missing {key} line")))?;
        let (name, rhs) = line
            .split_once('=')
            .ok_or_else(|| syntax(lineno, format!("expected '{key} = <scalar>'")))?;
        if name.trim() != key {
            return Err(syntax(lineno, format!("expected {key}, found {}", name.trim())));
        }
        parse_scalar_at(rhs.trim(), lineno)
    };
    let t_start = bound("t_start")?;
    let t_end = bound("t_end")?;

    if let Some((lineno, _)) = lines.next() {
        return Err(syntax(lineno, "unexpected trailing line"));
    }

    let map = PolyMap::new(&source, target, comps).map_err(ExprError::Core)?;
    Ok(CurveFile { map, t_start, t_end })
}

/// Writes the same format back out.
pub fn format_curve_file(map: &PolyMap, t_start: &CScalar, t_end: &CScalar) -> String {
    let mut out = format!("vars: {}\n", map.source().name(0));
    for (i, c) in map.components().iter().enumerate() {
        out.push_str(&format!("{} = {}\n", map.target().name(i), c));
    }
    out.push_str(&format!("t_start = {t_start}\n"));
    out.push_str(&format!("t_end = {t_end}\n"));
    out
}
