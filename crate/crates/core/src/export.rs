//! Presentation exporters: a plain listing, relator form for the two
//! common computer algebra systems, and the json interchange format.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    Plain,
    GapStyle,
    MagmaStyle,
    Json,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unsupported format: {0} (expected plain, gap-style, magma-style or json)")]
pub struct UnsupportedFormat(pub String);

impl FromStr for ExportFormat {
    type Err = UnsupportedFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(ExportFormat::Plain),
            "gap-style" | "gap" => Ok(ExportFormat::GapStyle),
            "magma-style" | "magma" => Ok(ExportFormat::MagmaStyle),
            "json" => Ok(ExportFormat::Json),
            other => Err(UnsupportedFormat(other.to_string())),
        }
    }
}

/// The relator `lhs rhs^{-1}` in multiplicative syntax, e.g. `a1*b^-1`.
fn relator_expr(lhs: &Word, rhs: &Word) -> String {
    let relator = Word::concat(&[lhs, &rhs.inverse()]).reduce();
    if relator.is_empty() {
        return "1".into();
    }
    relator
        .letters()
        .iter()
        .map(|l| {
            if l.exp == 1 {
                l.id.token()
            } else {
                format!("{}^-1", l.id.token())
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn export(pres: &Presentation, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => pres.to_json(),
        ExportFormat::Plain => {
            let mut out = String::new();
            for g in &pres.generators {
                let _ = writeln!(out, "generator {g}");
            }
            for r in &pres.relations {
                let _ = writeln!(out, "relation {}: {} = {}", r.name, r.lhs, r.rhs);
            }
            out
        }
        ExportFormat::GapStyle => {
            let names: Vec<String> = pres.generators.iter().map(|g| g.token()).collect();
            let quoted: Vec<String> = names.iter().map(|n| format!("\"{n}\"")).collect();
            let mut out = String::new();
            let _ = writeln!(out, "F := FreeGroup({});", quoted.join(", "));
            for (i, n) in names.iter().enumerate() {
                let _ = writeln!(out, "{n} := F.{};", i + 1);
            }
            let rels: Vec<String> = pres
                .relations
                .iter()
                .map(|r| relator_expr(&r.lhs, &r.rhs))
                .collect();
            let _ = writeln!(out, "rels := [\n  {}\n];", rels.join(",\n  "));
            let _ = writeln!(out, "G := F / rels;");
            out
        }
        ExportFormat::MagmaStyle => {
            let names: Vec<String> = pres.generators.iter().map(|g| g.token()).collect();
            let rels: Vec<String> = pres
                .relations
                .iter()
                .map(|r| relator_expr(&r.lhs, &r.rhs))
                .collect();
            let mut out = String::new();
            let _ = writeln!(out, "G<{}> := Group<", names.join(", "));
            let _ = writeln!(out, "  {} |", names.join(", "));
            let _ = writeln!(out, "  {}\n>;", rels.join(",\n  "));
            out
        }
    }
}
