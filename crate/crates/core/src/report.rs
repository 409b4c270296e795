//! Stable text and key-value rendering.
//!
//! A [`Report`] is an ordered list of keyed values. The text form is for
//! reading; the key-value form (`key=value`, one per line) is for scripts.
//! Rationals print as `num/den`, floats with twelve significant digits.

use std::fmt::Write as _;

use crate::classify::{all_verdicts, classify_full, headline, Classification, OptimalityVerdict};
use crate::constructions::ArrayFile;
use crate::design::{format_design, ResolvableDesign};
use crate::error::{Error, Result};
use crate::numerics::{fmt_f64, fmt_rational, Matrix, Spectrum};
use crate::optimality::{
    criterion_a, criterion_e, criterion_f, e_reciprocal, m_spectrum, primal_from_m,
    schur_compare, trace_sq, CriterionValue, SchurOrder,
};
use crate::search::{SearchResult, TheoremReport};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(String),
    List(Vec<String>),
    Matrix(Vec<Vec<String>>),
    /// Verbatim multi-line text (design or array files).
    Block(String),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push((key.into(), Value::Scalar(value.into())));
    }

    pub fn push_list(&mut self, key: impl Into<String>, values: Vec<String>) {
        self.entries.push((key.into(), Value::List(values)));
    }

    pub fn push_matrix<T: ToString>(&mut self, key: impl Into<String>, m: &Matrix<T>) {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().map(T::to_string).collect())
            .collect();
        self.entries.push((key.into(), Value::Matrix(rows)));
    }

    pub fn push_block(&mut self, key: impl Into<String>, text: impl Into<String>) {
        self.entries.push((key.into(), Value::Block(text.into())));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// Scalar value of `key`, if present.
    pub fn scalar(&self, key: &str) -> Option<&str> {
        match self.get(key)? {
            Value::Scalar(s) => Some(s),
            _ => None,
        }
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.entries {
            self.entries.push((format!("{prefix}{k}"), v));
        }
    }

    /// `key=value` lines; lists use `,`, matrix rows `;`, blocks `|` for newlines.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let s = match v {
                Value::Scalar(s) => s.clone(),
                Value::List(xs) => xs.join(","),
                Value::Matrix(rows) => rows
                    .iter()
                    .map(|r| r.join(","))
                    .collect::<Vec<_>>()
                    .join(";"),
                Value::Block(b) => b.trim_end().replace('\n', "|"),
            };
            let _ = writeln!(out, "{k}={s}");
        }
        out
    }

    pub fn to_text(&self) -> String {
        let width = self
            .entries
            .iter()
            .filter(|(_, v)| matches!(v, Value::Scalar(_) | Value::List(_)))
            .map(|(k, _)| k.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Value::Scalar(s) => {
                    let _ = writeln!(out, "{k:<width$}  {s}");
                }
                Value::List(xs) => {
                    let _ = writeln!(out, "{k:<width$}  {}", xs.join(" "));
                }
                Value::Matrix(rows) => {
                    let _ = writeln!(out, "{k}:");
                    let cell = rows.iter().flatten().map(String::len).max().unwrap_or(1);
                    for r in rows {
                        let cells: Vec<String> = r.iter().map(|c| format!("{c:>cell$}")).collect();
                        let _ = writeln!(out, "    {}", cells.join(" "));
                    }
                }
                Value::Block(b) => {
                    let _ = writeln!(out, "{k}:");
                    for line in b.lines() {
                        let _ = writeln!(out, "    {line}");
                    }
                }
            }
        }
        out
    }
}

fn spectrum_list(s: &Spectrum) -> Vec<String> {
    s.values().iter().map(|&x| fmt_f64(x)).collect()
}

fn criterion_entry(report: &mut Report, key: &str, value: Result<CriterionValue>) -> Result<()> {
    match value {
        Ok(v) => report.push(key, v.to_string()),
        Err(Error::Disconnected(_)) | Err(Error::NonPositiveEigenvalue(_)) => {
            report.push(key, "disconnected")
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn push_class(report: &mut Report, c: &Classification) {
    let s = c.setting;
    report.push("setting", s.to_string());
    report.push("v", s.v().to_string());
    report.push("r", s.r().to_string());
    report.push("k1", s.k1().to_string());
    report.push("k2", s.k2().to_string());
    report.push("theta_bar", c.params.theta_bar.to_string());
    report.push("gamma", fmt_rational(&c.params.gamma));
    report.push(
        "theta_star",
        c.params
            .theta_star
            .as_ref()
            .map_or_else(|| "none".to_string(), fmt_rational),
    );
    report.push("n_gamma", c.params.n_gamma.to_string());
    report.push("p_over_v", fmt_rational(&c.params.p_over_v(s.v())));
    report.push("class", c.class.to_string());
    let switched: Vec<String> = c.switched.iter().map(usize::to_string).collect();
    report.push("switched", if switched.is_empty() { "none".into() } else { switched.join(",") });
    match &c.group {
        Some(g) => {
            report.push("group_affine", "yes");
            report.push_list("group_sizes", g.t.iter().map(usize::to_string).collect());
            let groups: Vec<String> = g
                .groups
                .iter()
                .map(|grp| {
                    let one: Vec<String> = grp.iter().map(|h| (h + 1).to_string()).collect();
                    format!("{{{}}}", one.join(","))
                })
                .collect();
            report.push("groups", groups.join(" "));
            report.push("uniform", if g.uniform { "yes" } else { "no" });
        }
        None => report.push("group_affine", "no"),
    }
    report.push_matrix("phi", c.phi.matrix());
    report.push_matrix("delta", c.delta.matrix());
}

fn push_verdict(report: &mut Report, v: &OptimalityVerdict) {
    let key = format!("verdict.{}", v.criterion.as_str());
    report.push(format!("{key}.status"), v.status.as_str());
    report.push(format!("{key}.witness"), v.witness.clone().unwrap_or_else(|| "none".into()));
    for (k, x) in &v.certificate {
        report.push(format!("{key}.cert.{k}"), x.clone());
    }
    if let Some(c) = &v.caveat {
        report.push(format!("{key}.caveat"), c.clone());
    }
    if let Some(n) = &v.note {
        report.push(format!("{key}.note"), n.clone());
    }
}

/// Everything known about one design.
pub fn analyze(d: &ResolvableDesign) -> Result<Report> {
    let mut report = Report::new();
    let c = classify_full(d);
    push_class(&mut report, &c);
    let m = m_spectrum(d)?;
    report.push_list("m_spectrum", spectrum_list(&m));
    report.push_list("c_spectrum", spectrum_list(&primal_from_m(&d.setting(), &m)));
    criterion_entry(&mut report, "criterion.E", criterion_e(d))?;
    match e_reciprocal(d) {
        Ok(x) => report.push("criterion.E_reciprocal", fmt_f64(x)),
        Err(_) => report.push("criterion.E_reciprocal", "disconnected"),
    }
    criterion_entry(&mut report, "criterion.A", criterion_a(d))?;
    criterion_entry(&mut report, "criterion.F", criterion_f(d))?;
    report.push("trace_c_sq", fmt_rational(&trace_sq(d)));
    let verdicts = all_verdicts(d)?;
    for v in &verdicts {
        push_verdict(&mut report, v);
    }
    report.push("headline", headline(&c, &verdicts));
    Ok(report)
}

/// Ordering of a lower-is-better value from the first design's side.
fn relation(a: f64, b: f64) -> &'static str {
    let tol = 1e-9 * a.abs().max(b.abs()).max(1.0);
    if (a - b).abs() <= tol {
        "equal"
    } else if a < b {
        "better"
    } else {
        "worse"
    }
}

fn value_or_inf(v: Result<CriterionValue>) -> Result<(f64, String)> {
    match v {
        Ok(x) => Ok((x.to_f64(), x.to_string())),
        Err(Error::Disconnected(_)) | Err(Error::NonPositiveEigenvalue(_)) => {
            Ok((f64::INFINITY, "disconnected".to_string()))
        }
        Err(e) => Err(e),
    }
}

/// Schur, E, A and F comparison; relations are stated for the first design.
pub fn compare(d1: &ResolvableDesign, d2: &ResolvableDesign) -> Result<Report> {
    let order = schur_compare(d1, d2)?;
    let mut report = Report::new();
    report.push("setting", d1.setting().to_string());
    report.push("class.first", classify_full(d1).class.to_string());
    report.push("class.second", classify_full(d2).class.to_string());
    report.push_list("m_spectrum.first", spectrum_list(&m_spectrum(d1)?));
    report.push_list("m_spectrum.second", spectrum_list(&m_spectrum(d2)?));
    let schur = match order {
        SchurOrder::FirstBetter => "better",
        SchurOrder::SecondBetter => "worse",
        SchurOrder::Equal => "equal",
        SchurOrder::Incomparable => "incomparable",
    };
    report.push("schur", schur);
    type Eval = fn(&ResolvableDesign) -> Result<CriterionValue>;
    let criteria: [(&str, Eval); 3] = [("E", criterion_e), ("A", criterion_a), ("F", criterion_f)];
    for (name, f) in criteria {
        let (a, sa) = value_or_inf(f(d1))?;
        let (b, sb) = value_or_inf(f(d2))?;
        report.push(format!("{name}.first"), sa);
        report.push(format!("{name}.second"), sb);
        let rel = if a.is_infinite() && b.is_infinite() { "equal" } else { relation(a, b) };
        report.push(name, rel);
    }
    Ok(report)
}

/// Best value, witnesses in design format, and class tallies.
pub fn search_summary(res: &SearchResult) -> Report {
    let mut report = Report::new();
    report.push("setting", res.setting.to_string());
    report.push("criterion", res.criterion.as_str());
    report.push("candidates", res.count.to_string());
    report.push("truncated", if res.truncated { "yes" } else { "no" });
    report.push(
        "best",
        res.best.as_ref().map_or_else(|| "none".to_string(), |b| b.to_string()),
    );
    if !res.census.is_empty() {
        report.push("distinct_phi", res.census.len().to_string());
        report.push("tally.ecd", res.tallies.ecd.to_string());
        report.push("tally.aecd", res.tallies.aecd.to_string());
        report.push("tally.ucd", res.tallies.ucd.to_string());
        report.push("tally.group_affine", res.tallies.group_affine.to_string());
        let optimal: u128 = res.optimal_entries().map(|e| e.count).sum();
        report.push("optimal_candidates", optimal.to_string());
    }
    report.push("optimizers", res.optimizers.len().to_string());
    for (i, (fp, w)) in res.optimizers.iter().zip(&res.witnesses).enumerate() {
        let n = i + 1;
        report.push(format!("optimizer.{n}.fingerprint"), fp.to_string());
        report.push(format!("optimizer.{n}.class"), classify_full(w).class.to_string());
        report.push_block(format!("optimizer.{n}.design"), format_design(w));
    }
    report
}

/// One `PASS`/`FAIL` line per check, plus notes.
pub fn theorem_lines(rep: &TheoremReport) -> String {
    rep.to_string()
}

/// Header, verification statistics and the array itself.
pub fn array_summary(file: &ArrayFile) -> Result<Report> {
    let mut report = Report::new();
    let s = file.setting()?;
    report.push("setting", s.to_string());
    report.push("theta", file.theta.to_string());
    if let Some(g) = &file.groups {
        report.push_list("group_sizes", g.iter().map(usize::to_string).collect());
    }
    report.push_block("array", file.to_string());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{parse_design, DesignSetting};
    use crate::fixtures;

    #[test]
    fn ecd4_analysis() {
        let r = analyze(&fixtures::ecd4()).unwrap();
        assert_eq!(r.scalar("class"), Some("ECD(4)"));
        assert_eq!(r.scalar("gamma"), Some("0"));
        assert_eq!(r.scalar("theta_star"), Some("4"));
        assert_eq!(r.scalar("criterion.E"), Some("2"));
        assert_eq!(r.scalar("criterion.A"), Some("7/3"));
        assert_eq!(r.scalar("verdict.Schur.witness"), Some("Theorem 4"));
        assert_eq!(r.scalar("headline"), Some("ECD(4); Schur-optimal (Theorem 4)"));
        let kv = r.to_kv();
        assert!(kv.contains("\nm_spectrum=2,2,2,2\n"), "{kv}");
        assert!(kv.contains("\nc_spectrum=4,4,4,4,3,3,3,3,0\n"), "{kv}");
        assert!(r.to_text().contains("phi:\n"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let d = fixtures::group_affine_9_5();
        assert_eq!(analyze(&d).unwrap().to_kv(), analyze(&d).unwrap().to_kv());
    }

    #[test]
    fn compare_ecds() {
        // D(9,3;5,4): gamma = 7/9 >= (r-1)/r, so ECD(3) is Schur-better than ECD(2).
        let ecd2 = parse_design("9 3 5 4\n1 2 3 4 5\n1 2 6 7 8\n3 4 6 7 9\n").unwrap();
        let ecd3 = parse_design("9 3 5 4\n1 2 3 4 5\n1 2 3 6 7\n1 2 4 6 8\n").unwrap();
        let r = compare(&ecd2, &ecd3).unwrap();
        assert_eq!(r.scalar("class.first"), Some("ECD(2)"));
        assert_eq!(r.scalar("class.second"), Some("ECD(3)"));
        assert_eq!(r.scalar("schur"), Some("worse"));
        assert_eq!(r.scalar("E"), Some("worse"));
        let same = compare(&ecd3, &ecd3).unwrap();
        assert_eq!(same.scalar("schur"), Some("equal"));
        assert_eq!(same.scalar("A"), Some("equal"));
    }

    #[test]
    fn compare_rejects_mixed_settings() {
        let other = parse_design("9 4 6 3\n1 2 3 4 5 6\n1 2 3 4 7 8\n1 2 5 6 7 8\n3 4 5 6 7 8\n");
        let d = ResolvableDesign::from_block1(
            DesignSetting::new(9, 4, 5, 4).unwrap(),
            vec![vec![1, 2, 3, 4, 5]; 4],
        )
        .unwrap();
        assert!(matches!(
            compare(&d, &other.unwrap()),
            Err(Error::SettingMismatch(_, _))
        ));
    }

    #[test]
    fn disconnected_criteria_are_named() {
        let s = DesignSetting::new(5, 3, 3, 2).unwrap();
        let d = ResolvableDesign::from_block1(s, vec![vec![1, 2, 3]; 3]).unwrap();
        let r = analyze(&d).unwrap();
        assert_eq!(r.scalar("criterion.E"), Some("disconnected"));
    }
}
