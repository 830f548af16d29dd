//! Text and CSV renderings of command outputs.

use std::fmt::Write;

use serde::Serialize;

use modcx_core::checks::{CheckReport, Verdict};
use modcx_core::resolution::ResolutionSummary;
use modcx_core::{GrowthClass, HomologyKind, HomologyTable};

use crate::session::Session;
use crate::Format;

#[derive(Serialize)]
pub struct RingInfo {
    pub ring: String,
    pub prime: u32,
    pub vars: Vec<String>,
    pub length: usize,
    pub edim: usize,
    /// `ℓ(m^j)` for `j = 0..`, ending at 0.
    pub m_power_lengths: Vec<usize>,
    pub loewy_length: usize,
    pub socle_length: usize,
    pub gorenstein: bool,
    pub ci_codim: Option<usize>,
    pub tags: Vec<String>,
}

impl RingInfo {
    pub fn of(s: &Session) -> RingInfo {
        let a = &s.algebra;
        RingInfo {
            ring: s.name.clone(),
            prime: s.spec.prime,
            vars: a.var_names().to_vec(),
            length: a.length(),
            edim: a.edim(),
            m_power_lengths: a.m_power_lengths(),
            loewy_length: a.loewy_length(),
            socle_length: a.socle_length(),
            gorenstein: a.is_gorenstein(),
            ci_codim: a.ci_codim(),
            tags: a.class_tags().into_iter().map(String::from).collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ring        {}", self.ring);
        let _ = writeln!(out, "field       GF({})", self.prime);
        let _ = writeln!(out, "variables   {}", self.vars.join(", "));
        let _ = writeln!(out, "length      {}", self.length);
        let _ = writeln!(out, "edim        {}", self.edim);
        let _ = writeln!(out, "ℓ(m^j)      {}", join(&self.m_power_lengths));
        let _ = writeln!(out, "loewy       {}", self.loewy_length);
        let _ = writeln!(out, "socle       {}", self.socle_length);
        let _ = writeln!(out, "gorenstein  {}", self.gorenstein);
        if let Some(c) = self.ci_codim {
            let _ = writeln!(out, "ci codim    {c}");
        }
        let _ = writeln!(out, "tags        {}", self.tags.join(" "));
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("j,length_m_power\n");
        for (j, l) in self.m_power_lengths.iter().enumerate() {
            let _ = writeln!(out, "{j},{l}");
        }
        out
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn sequence_csv(label: &str, xs: &[u64]) -> String {
    let mut out = format!("i,{label}\n");
    for (i, x) in xs.iter().enumerate() {
        let _ = writeln!(out, "{i},{x}");
    }
    out
}

fn class_line(c: &GrowthClass) -> String {
    format!("{:?} ({}, {} terms)", c.tag, c.evidence.method, c.evidence.length)
}

pub fn resolve_text(ring: &str, module: &str, r: &ResolutionSummary, class: &GrowthClass) -> String {
    let mut out = format!("betti numbers of {module} over {ring}\n");
    for (i, b) in r.betti.iter().enumerate() {
        let _ = writeln!(out, "  b_{i:<3} {b}");
    }
    if r.steps < r.requested_steps {
        let _ = writeln!(out, "  (stopped at step {} of {}: resolution budget exhausted)", r.steps, r.requested_steps);
    }
    let _ = writeln!(out, "class {}", class_line(class));
    out
}

#[derive(Serialize)]
pub struct DualCheck {
    pub against: String,
    pub degrees: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<usize>,
}

impl DualCheck {
    pub fn compare(a: &HomologyTable, b: &HomologyTable) -> DualCheck {
        let degrees = a.steps.min(b.steps) + 1;
        let bad: Vec<usize> = (0..degrees).filter(|&i| a.lengths[i] != b.lengths[i]).collect();
        DualCheck {
            against: format!("{}({}, {})", b.kind.label(), b.pair[0], b.pair[1]),
            degrees,
            mismatches: bad.len(),
            first_mismatch: bad.first().copied(),
        }
    }
}

pub fn ext_text(t: &HomologyTable, class: &GrowthClass, dual: Option<&DualCheck>) -> String {
    let (name, sep) = match t.kind {
        HomologyKind::Ext => ("Ext", "^"),
        HomologyKind::Tor => ("Tor", "_"),
    };
    let mut out = format!("{name}({}, {})\n  i     length  gens\n", t.pair[0], t.pair[1]);
    for i in 0..t.lengths.len() {
        let _ = writeln!(out, "  {:<5} {:<7} {}", format!("{sep}{i}"), t.lengths[i], t.gens[i]);
    }
    if t.truncated() {
        let _ = writeln!(out, "  (stopped at degree {} of {}: budget exhausted)", t.steps, t.requested_steps);
    }
    let _ = writeln!(out, "class {}", class_line(class));
    if let Some(d) = dual {
        let _ = writeln!(out, "dual check against {}: {} mismatches over {} degrees", d.against, d.mismatches, d.degrees);
    }
    out
}

pub fn cx_text(
    module: &str,
    cx: &GrowthClass,
    px: &GrowthClass,
    pair: Option<&(String, GrowthClass)>,
    format: Format,
) -> String {
    let mut rows = vec![("cx".to_string(), module.to_string(), cx), ("px".to_string(), module.to_string(), px)];
    if let Some((n, c)) = pair {
        rows.push(("cxx".to_string(), format!("{module},{n}"), c));
    }
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("invariant,argument,class\n");
        for (inv, arg, c) in rows {
            let _ = writeln!(out, "{inv},{},{:?}", csv_field(&arg), c.tag);
        }
    } else {
        for (inv, arg, c) in rows {
            let _ = writeln!(out, "{inv}({arg}) = {}", class_line(c));
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Violated => "VIOLATED",
        Verdict::Inconclusive => "inconclusive",
        Verdict::NotApplicable => "n/a",
    }
}

pub fn report_csv(r: &CheckReport, violations_only: bool) -> String {
    let mut out = String::from("check,verdict,ring,m,n,steps,degree,witness\n");
    for v in &r.verdicts {
        if violations_only && v.verdict != Verdict::Violated {
            continue;
        }
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            v.check,
            verdict_label(v.verdict),
            csv_field(&v.instance.ring),
            csv_field(&v.instance.m),
            csv_field(v.instance.n.as_deref().unwrap_or("")),
            v.instance.steps,
            v.degree.map(|d| d.to_string()).unwrap_or_default(),
            csv_field(&v.witness)
        );
    }
    out
}

pub fn report_text(r: &CheckReport, violations_only: bool) -> String {
    let mut out = String::new();
    let c = &r.config;
    let _ = writeln!(out, "suite {} (seed {}, steps {}, GF({}))", r.suite, r.seed, c.steps, c.prime);
    if !violations_only {
        let _ = writeln!(out, "\n{:<14} {:>6} {:>6} {:>9} {:>6} {:>6}", "ring", "ℓ", "r", "modules", "pairs", "");
        for g in &r.rings {
            let _ = writeln!(
                out,
                "{:<14} {:>6} {:>6} {:>9} {:>6}  {}",
                g.name,
                g.length,
                g.socle_length,
                g.modules,
                g.pairs,
                g.tags.join(" ")
            );
        }
        let _ = writeln!(out, "\n{:<14} {:>8} {:>8} {:>12} {:>6}", "check", "holds", "violated", "inconclusive", "n/a");
        for (name, k) in &r.per_check {
            let _ = writeln!(
                out,
                "{:<14} {:>8} {:>8} {:>12} {:>6}",
                name, k.holds, k.violated, k.inconclusive, k.not_applicable
            );
        }
        let t = &r.totals;
        let _ = writeln!(out, "{:<14} {:>8} {:>8} {:>12} {:>6}", "total", t.holds, t.violated, t.inconclusive, t.not_applicable);
        let decided = t.holds + t.violated + t.inconclusive;
        if decided > 0 {
            let _ = writeln!(out, "inconclusive rate {:.1}%", 100.0 * t.inconclusive as f64 / decided as f64);
        }
    }
    let violations: Vec<_> = r.violations().collect();
    if violations.is_empty() {
        let _ = writeln!(out, "\nno violations");
    } else {
        let _ = writeln!(out, "\n{} violations:", violations.len());
        for v in violations {
            let _ = writeln!(
                out,
                "  {} on {} M={} N={} steps={}{}: {}",
                v.check,
                v.instance.ring,
                v.instance.m,
                v.instance.n.as_deref().unwrap_or("-"),
                v.instance.steps,
                v.degree.map(|d| format!(" degree {d}")).unwrap_or_default(),
                v.witness
            );
        }
    }
    out
}
