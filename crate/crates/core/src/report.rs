//! Structured reports behind the command-line verbs, and the batch tables of
//! the `sweep` verb.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::fields_from_atoms;
use crate::error::{Error, Result};
use crate::field::{GenusFieldResult, MultiQuadField};
use crate::lambda::{lambda2_multiquad_imaginary, LambdaPlus, LambdaResult};
use crate::parity::{classify, ParityVerdict};
use crate::tower::{self, SplittingReport};

/// Largest prime bound accepted by [`sweep_rows`].
pub const SWEEP_BOUND_LIMIT: u64 = 1000;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Input {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radicands: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_plus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assume_greenberg: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorObject {
    /// `input`, `hypothesis` or `internal`.
    pub kind: String,
    pub exit_code: i32,
    pub message: String,
}

impl From<&Error> for ErrorObject {
    fn from(e: &Error) -> Self {
        ErrorObject {
            kind: e.kind().as_str().to_string(),
            exit_code: e.exit_code(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: Input,
    pub field: Option<MultiQuadField>,
    pub lambda: Option<LambdaResult>,
    pub parity: Option<ParityVerdict>,
    pub genus: Option<GenusFieldResult>,
    pub splitting: Vec<SplittingReport>,
    pub assumptions: Vec<String>,
    pub errors: Vec<ErrorObject>,
}

impl Report {
    fn new(input: Input) -> Self {
        Report {
            input,
            ..Report::default()
        }
    }

    fn with_error(mut self, e: &Error) -> Self {
        self.errors.push(e.into());
        self
    }

    /// 0 when there are no errors, else the code of the first error.
    pub fn exit_code(&self) -> i32 {
        self.errors.first().map_or(0, |e| e.exit_code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(f) = &self.field {
            let _ = writeln!(s, "field: {}", field_display(f));
        }
        if let Some(l) = &self.lambda {
            let t = &l.terms;
            let _ = writeln!(s, "lambda_2 = {}", l.lambda2);
            let d_list: Vec<String> = t.d_list.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                s,
                "  presentation: d_i = [{}], d = {}, r = {}, theta = {}, delta = {}",
                d_list.join(", "),
                t.d,
                t.r,
                u8::from(t.theta),
                u8::from(t.delta)
            );
            for (label, terms) in [("real", &t.real_primes), ("imaginary", &t.imaginary_primes)] {
                for c in terms {
                    let _ = writeln!(
                        s,
                        "  {label} prime {}: v2(p^2-1) = {}, contributes {}",
                        c.prime, c.nu, c.contribution
                    );
                }
            }
            let _ = writeln!(s, "  correction: -{}", t.correction);
            let _ = writeln!(s, "  lambda_2(K^+) = {}", l.lambda_plus);
            if !t.s.is_empty() {
                let _ = writeln!(s, "  s_i = {:?}, f_i = {:?}", t.s, t.f);
            }
        }
        if let Some(p) = &self.parity {
            let case = p.matched_case.map_or("none".to_string(), |c| c.to_string());
            let _ = writeln!(s, "class number parity: {} (case {case})", p.verdict);
            if !p.witness.primes.is_empty() {
                let _ = writeln!(s, "  primes: {:?}", p.witness.primes);
            }
            for c in &p.witness.conditions {
                let _ = writeln!(s, "  {c}");
            }
            for n in &p.witness.notes {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        if let Some(g) = &self.genus {
            let _ = writeln!(s, "narrow genus field: {}", field_display(&g.narrow));
            let _ = writeln!(s, "genus field: {}", field_display(&g.genus));
        }
        if !self.splitting.is_empty() {
            let _ = writeln!(s, "{:>4} {:>6} {:>10} {:>10}  behavior", "n", "e", "f", "g");
            for r in &self.splitting {
                let b = r.behavior.map_or("-".to_string(), |b| format!("{b:?}").to_lowercase());
                let _ = writeln!(s, "{:>4} {:>6} {:>10} {:>10}  {b}", r.level, r.e, r.f, r.g);
            }
        }
        for a in &self.assumptions {
            let _ = writeln!(s, "assumption: {a}");
        }
        for e in &self.errors {
            let _ = writeln!(s, "error ({}): {}", e.kind, e.message);
        }
        s
    }
}

fn field_display(f: &MultiQuadField) -> String {
    if f.rank() == 0 {
        return "Q".into();
    }
    let parts: Vec<String> = f.basis().iter().map(|c| format!("sqrt({c})")).collect();
    format!("Q({})", parts.join(", "))
}

fn parse_field(radicands: &str) -> Result<MultiQuadField> {
    let k: MultiQuadField = radicands.parse()?;
    if k.rank() == 0 {
        return Err(Error::Parse("at least one radicand other than a square is required".into()));
    }
    Ok(k)
}

pub fn lambda_plus_from_flags(assume_greenberg: bool, lambda_plus: Option<u64>) -> Option<LambdaPlus> {
    match (lambda_plus, assume_greenberg) {
        (Some(v), _) => Some(LambdaPlus::Supplied(v)),
        (None, true) => Some(LambdaPlus::AssumeGreenberg),
        (None, false) => None,
    }
}

/// `lambda` verb. `plus = None` means neither Greenberg's conjecture nor a
/// value of `lambda(K^+)` is available.
pub fn cmd_lambda(radicands: &str, plus: Option<LambdaPlus>) -> Report {
    let mut report = Report::new(Input {
        command: "lambda".into(),
        radicands: Some(radicands.into()),
        lambda_plus: match plus {
            Some(LambdaPlus::Supplied(v)) => Some(v),
            _ => None,
        },
        assume_greenberg: Some(plus == Some(LambdaPlus::AssumeGreenberg)),
        ..Input::default()
    });
    let k = match parse_field(radicands) {
        Ok(k) => k,
        Err(e) => return report.with_error(&e),
    };
    report.field = Some(k.clone());
    let plus = match plus {
        Some(p) => p,
        // K^+ = Q needs no assumption
        None if k.maximal_real_subfield().rank() == 0 => LambdaPlus::AssumeGreenberg,
        None => {
            return report.with_error(&Error::Hypothesis(
                "lambda_2(K^+) unknown: assume Greenberg's conjecture or supply --lambda-plus".into(),
            ))
        }
    };
    match lambda2_multiquad_imaginary(&k, plus) {
        Ok(l) => {
            if l.greenberg_assumed {
                report
                    .assumptions
                    .push("lambda_2(K^+) = 0 (Greenberg's conjecture for the maximal real subfield)".into());
            } else if let LambdaPlus::Supplied(v) = plus {
                if l.terms.r > 0 {
                    report.assumptions.push(format!("lambda_2(K^+) = {v} supplied"));
                }
            }
            report.lambda = Some(l);
            report
        }
        Err(e) => report.with_error(&e),
    }
}

/// `parity` verb.
pub fn cmd_parity(radicands: &str) -> Report {
    let mut report = Report::new(Input {
        command: "parity".into(),
        radicands: Some(radicands.into()),
        ..Input::default()
    });
    let k = match parse_field(radicands) {
        Ok(k) => k,
        Err(e) => return report.with_error(&e),
    };
    report.field = Some(k.clone());
    match classify(&k) {
        Ok(v) => {
            report.parity = Some(v);
            report
        }
        Err(e) => report.with_error(&e),
    }
}

/// `genus` verb.
pub fn cmd_genus(radicands: &str) -> Report {
    let mut report = Report::new(Input {
        command: "genus".into(),
        radicands: Some(radicands.into()),
        ..Input::default()
    });
    match parse_field(radicands) {
        Ok(k) => {
            report.genus = Some(k.narrow_genus_field());
            report.field = Some(k);
            report
        }
        Err(e) => report.with_error(&e),
    }
}

/// Parse `a..b`, `a..=b` (both inclusive) or a single level.
pub fn parse_levels(text: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parse(format!("bad level range {text:?}"));
    let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = text.split_once("..=") {
        (parse(a)?, parse(b)?)
    } else if let Some((a, b)) = text.split_once("..") {
        (parse(a)?, parse(b)?)
    } else {
        let n = parse(text)?;
        (n, n)
    };
    if lo > hi {
        return Err(bad());
    }
    if hi > tower::MAX_LEVEL {
        return Err(Error::LevelTooLarge(hi));
    }
    Ok((lo, hi))
}

/// `splitting` verb: `(e, f, g)` of `p` in `Q_n / Q` for each level, and the
/// behaviour in `Q_n(sqrt(d)) / Q_n` when `d` is given.
pub fn cmd_splitting(p: u64, levels: &str, d: Option<i64>) -> Report {
    let mut report = Report::new(Input {
        command: "splitting".into(),
        prime: Some(p),
        levels: Some(levels.into()),
        d,
        ..Input::default()
    });
    let run = || -> Result<Vec<SplittingReport>> {
        let (lo, hi) = parse_levels(levels)?;
        (lo..=hi)
            .map(|n| {
                let mut row = tower::level_report(p, n)?;
                if let Some(d) = d {
                    row.behavior = Some(tower::splitting_qn_quadratic(p, d, n)?);
                }
                Ok(row)
            })
            .collect()
    };
    match run() {
        Ok(rows) => {
            report.splitting = rows;
            report
        }
        Err(e) => report.with_error(&e),
    }
}

/// One line of a batch table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub field: MultiQuadField,
    /// Empty for real fields.
    pub lambda2: Option<u64>,
    pub parity: String,
    pub case: Option<String>,
    pub assumptions: String,
}

/// Every field generated by at most `max_rank` of `-1, +-q` for primes
/// `q < bound`, with `lambda_2` (imaginary fields, Greenberg assumed for
/// `K^+ != Q`) and the parity verdict.
pub fn sweep_rows(bound: u64, max_rank: usize) -> Result<Vec<SweepRow>> {
    if bound > SWEEP_BOUND_LIMIT {
        return Err(Error::Parse(format!(
            "bound {bound} exceeds the limit {SWEEP_BOUND_LIMIT}"
        )));
    }
    if max_rank > 3 {
        return Err(Error::Parse("max rank must be at most 3".into()));
    }
    fields_from_atoms(bound, max_rank)
        .into_par_iter()
        .map(|k| {
            let (lambda2, assumptions) = if k.is_imaginary() {
                let l = lambda2_multiquad_imaginary(&k, LambdaPlus::AssumeGreenberg)?;
                let a = if l.greenberg_assumed { "greenberg" } else { "" };
                (Some(l.lambda2), a.to_string())
            } else {
                (None, String::new())
            };
            let v = classify(&k)?;
            Ok(SweepRow {
                field: k,
                lambda2,
                parity: v.verdict.to_string(),
                case: v.matched_case.map(|c| c.to_string()),
                assumptions,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

pub fn render_table(rows: &[SweepRow], format: TableFormat) -> Result<Vec<u8>> {
    match format {
        TableFormat::Json => {
            let mut out = serde_json::to_vec_pretty(rows).map_err(|e| Error::Internal(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "lambda2", "parity", "case", "assumptions"])
                .map_err(|e| Error::Internal(e.to_string()))?;
            for r in rows {
                w.write_record([
                    r.field.to_string(),
                    r.lambda2.map(|v| v.to_string()).unwrap_or_default(),
                    r.parity.clone(),
                    r.case.clone().unwrap_or_default(),
                    r.assumptions.clone(),
                ])
                .map_err(|e| Error::Internal(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Internal(e.to_string()))
        }
    }
}

/// `sweep` verb: write the table for `bound` to `path`.
pub fn cmd_sweep(bound: u64, max_rank: usize, path: &Path, format: TableFormat) -> Result<usize> {
    let rows = sweep_rows(bound, max_rank)?;
    let bytes = render_table(&rows, format)?;
    std::fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::{ParityCase, Verdict};

    #[test]
    fn lambda_reports() {
        let r = cmd_lambda("7,3,-1", Some(LambdaPlus::AssumeGreenberg));
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.lambda.as_ref().unwrap().lambda2, 3);
        assert!(!r.assumptions.is_empty());
        let r = cmd_lambda("-7", Some(LambdaPlus::AssumeGreenberg));
        assert_eq!(r.lambda.unwrap().lambda2, 1);
        assert!(r.assumptions.is_empty());
        assert_eq!(cmd_lambda("-1", None).lambda.unwrap().lambda2, 0);
        assert_eq!(cmd_lambda("7,3", Some(LambdaPlus::AssumeGreenberg)).exit_code(), 3);
        assert_eq!(cmd_lambda("x", Some(LambdaPlus::AssumeGreenberg)).exit_code(), 2);
        assert_eq!(cmd_lambda("7,-1", None).exit_code(), 3);
        let r = cmd_lambda("7,-1", Some(LambdaPlus::Supplied(1)));
        assert_eq!(r.assumptions, vec!["lambda_2(K^+) = 1 supplied".to_string()]);
    }

    #[test]
    fn parity_reports() {
        let r = cmd_parity("2,-11,33");
        let v = r.parity.unwrap();
        assert_eq!((v.verdict, v.matched_case), (Verdict::Odd, Some(ParityCase::Imag3)));
        let r = cmd_parity("2,-5");
        assert_eq!(r.parity.unwrap().verdict, Verdict::EvenNotDiv4);
        let r = cmd_parity("2,3");
        assert_eq!(r.parity.unwrap().matched_case, Some(ParityCase::RealA));
        let r = cmd_parity("-7");
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.parity.unwrap().verdict, Verdict::OutOfScope);
    }

    #[test]
    fn splitting_reports() {
        let r = cmd_splitting(7, "0..5", None);
        let g: Vec<u64> = r.splitting.iter().map(|x| x.g).collect();
        assert_eq!(g, vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(cmd_splitting(2, "0..3", None).exit_code(), 2);
        assert_eq!(cmd_splitting(7, "3..1", None).exit_code(), 2);
        assert_eq!(parse_levels("4"), Ok((4, 4)));
        assert_eq!(parse_levels("0..=2"), Ok((0, 2)));
    }

    #[test]
    fn json_round_trip() {
        for r in [
            cmd_lambda("7,3,-1", Some(LambdaPlus::AssumeGreenberg)),
            cmd_parity("2,-11,33"),
            cmd_genus("3,5"),
            cmd_splitting(3, "0..3", Some(5)),
            cmd_lambda("oops", None),
        ] {
            let back: Report = serde_json::from_str(&r.to_json()).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn table_shapes() {
        let empty = render_table(&sweep_rows(0, 2).unwrap(), TableFormat::Csv).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap(), "field,lambda2,parity,case,assumptions\n");
        assert!(sweep_rows(SWEEP_BOUND_LIMIT + 1, 2).is_err());
        let rows = sweep_rows(8, 2).unwrap();
        let two_i = rows.iter().find(|r| r.field.to_string() == "-1,2").unwrap();
        assert_eq!(two_i.case.as_deref(), Some("imag-4"));
        assert_eq!(two_i.lambda2, Some(0));
    }
}
