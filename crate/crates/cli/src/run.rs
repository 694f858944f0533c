use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;
use xmod_homology::bar::{xmod_homology, BarError, BarOptions, CoefficientSystem};
use xmod_homology::laws::{
    check_classical_agreement, check_coefficient_les, check_five_term, check_h0_closed_form, check_h1_closed_form,
    check_h2_epimorphism, check_inclusion_reduction, check_weak_invariance, LawError, LawReport,
};
use xmod_homology::grp::GroupOps;
use xmod_homology::par;
use xmod_homology::xmod::{is_weak_equivalence, CrossedModule};

use crate::doc::{parse, Document};
use crate::{BarFlags, Format, Law};

pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Outcome { stdout, stderr: String::new(), code: if pass { 0 } else { 1 } }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: 2 }
    }

    fn failure(msg: impl Into<String>) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: 1 }
    }
}

fn bar_error(e: BarError) -> Outcome {
    match e {
        BarError::TooLarge { .. } | BarError::Mismatch(_) => Outcome::usage(e.to_string()),
        other => Outcome::failure(other.to_string()),
    }
}

fn law_error(e: LawError) -> Outcome {
    match e {
        LawError::Bar(b) => bar_error(b),
        LawError::Precondition(m) => Outcome::usage(m),
    }
}

fn load(path: &Path) -> Result<Document, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| if e.is_mathematical() { Outcome::failure(e.to_string()) } else { Outcome::usage(e.to_string()) })
}

fn options(bar: BarFlags) -> BarOptions {
    BarOptions { normalized: bar.normalized_bar, max_entry: bar.max_entry }
}

fn mode(normalized: bool) -> &'static str {
    if normalized {
        "normalized"
    } else {
        "unnormalized"
    }
}

pub fn validate(path: &Path, format: Format) -> Outcome {
    let doc = match load(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let summary = doc.summary();
    let out = match format {
        Format::Text => {
            let mut s = String::from("valid\n");
            for (section, n) in summary.iter().filter(|(_, n)| *n > 0) {
                let _ = writeln!(s, "{section}: {n}");
            }
            s
        }
        Format::Json => {
            let counts: serde_json::Map<String, serde_json::Value> =
                summary.into_iter().map(|(k, n)| (k.to_string(), json!(n))).collect();
            format!("{}\n", json!({ "valid": true, "counts": counts }))
        }
    };
    Outcome::ok(out, true)
}

pub fn homology(path: &Path, xmod: &str, max_degree: usize, coefficients: Option<&str>, bar: BarFlags) -> Outcome {
    let doc = match load(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let Some(x) = doc.crossed_modules.get(xmod) else {
        return Outcome::usage(format!("no crossed module named {xmod:?}"));
    };
    let coeffs = match coefficients {
        None => CoefficientSystem::IntegralTrivial,
        Some(name) => match doc.module_actions.get(name) {
            Some(a) => CoefficientSystem::Module(a.clone()),
            None => return Outcome::usage(format!("no module action named {name:?}")),
        },
    };
    let opts = options(bar);
    let h = match xmod_homology(x, &coeffs, max_degree, opts) {
        Ok(h) => h,
        Err(e) => return bar_error(e),
    };
    let out = match bar.format {
        Format::Text => {
            let mut s = String::new();
            for (k, g) in h.groups().iter().enumerate() {
                let _ = writeln!(s, "H_{k} = {g}");
            }
            s
        }
        Format::Json => {
            let groups: Vec<_> = h
                .groups()
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    json!({
                        "degree": k,
                        "group": g.to_string(),
                        "rank": g.rank(),
                        "torsion": g.divisors().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let timings: Vec<_> = h
                .timings
                .iter()
                .map(|(stage, d)| json!({ "stage": stage, "ms": d.as_secs_f64() * 1000.0 }))
                .collect();
            let doc = json!({
                "xmod": xmod,
                "coefficients": coefficients.unwrap_or("integral"),
                "max_degree": max_degree,
                "mode": mode(opts.normalized),
                "max_entry": opts.max_entry,
                "homology": groups,
                "entries": h.entries,
                "timings": timings,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    };
    Outcome::ok(out, true)
}

type Check<'a> = (String, Box<dyn Fn() -> Result<LawReport, LawError> + Send + Sync + 'a>);

fn targets<'a>(law: Law, doc: &'a Document, max_degree: usize, opts: BarOptions, only: Option<&str>) -> Result<(Vec<Check<'a>>, Vec<String>), Outcome> {
    let keep = |name: &str| only.is_none_or(|o| o == name);
    let xmods = || doc.crossed_modules.iter().filter(|(n, _)| keep(n));
    let mut checks: Vec<Check<'a>> = Vec::new();
    let mut skipped = Vec::new();
    match law {
        Law::InclusionReduction => {
            for (name, x) in xmods() {
                if x.mu().is_injective() {
                    let n = x.image();
                    checks.push((name.clone(), Box::new(move || check_inclusion_reduction(&n, max_degree, opts))));
                } else {
                    skipped.push(format!("{name}: boundary is not injective"));
                }
            }
        }
        Law::ClassicalAgreement => {
            for (name, x) in xmods() {
                if x.h().order() == 1 {
                    let g = x.g().clone();
                    checks.push((
                        name.clone(),
                        Box::new(move || check_classical_agreement(g.clone(), &CoefficientSystem::IntegralTrivial, max_degree, opts)),
                    ));
                } else {
                    skipped.push(format!("{name}: top group is not trivial"));
                }
            }
            for (name, a) in doc.module_actions.iter().filter(|(n, _)| keep(n)) {
                if a.actor().h().order() == 1 && a.module().xmod().h().order() == 1 {
                    let g = a.actor().g().clone();
                    let c = CoefficientSystem::Module(a.clone());
                    checks.push((name.clone(), Box::new(move || check_classical_agreement(g.clone(), &c, max_degree, opts))));
                } else {
                    skipped.push(format!("{name}: not (0, A, 0) over (0, G, 0)"));
                }
            }
        }
        Law::FiveTerm => {
            for (name, s) in doc.sequences.iter().filter(|(n, _)| keep(n)) {
                checks.push((name.clone(), Box::new(move || check_five_term(s, opts))));
            }
        }
        Law::WeakInvariance => {
            for (name, m) in doc.xmod_morphisms.iter().filter(|(n, _)| keep(n)) {
                if is_weak_equivalence(m) || only.is_some() {
                    checks.push((name.clone(), Box::new(move || check_weak_invariance(m, max_degree, opts))));
                } else {
                    skipped.push(format!("{name}: not a weak equivalence"));
                }
            }
        }
        Law::H2Epi => {
            for (name, x) in xmods() {
                checks.push((name.clone(), Box::new(move || check_h2_epimorphism(x, opts))));
            }
        }
        Law::H1ClosedForm => {
            for (name, x) in xmods() {
                checks.push((name.clone(), Box::new(move || check_h1_closed_form(x, opts))));
            }
        }
        Law::H0ClosedForm => {
            for (name, x) in xmods() {
                checks.push((name.clone(), Box::new(move || check_h0_closed_form(x, &CoefficientSystem::IntegralTrivial, opts))));
            }
            for (name, a) in doc.module_actions.iter().filter(|(n, _)| keep(n)) {
                let c = CoefficientSystem::Module(a.clone());
                let x: &CrossedModule = a.actor();
                checks.push((name.clone(), Box::new(move || check_h0_closed_form(x, &c, opts))));
            }
        }
        Law::CoefficientLes => {
            for (name, s) in doc.module_sequences.iter().filter(|(n, _)| keep(n)) {
                let x = s.left.source().actor();
                checks.push((name.clone(), Box::new(move || check_coefficient_les(x, s, max_degree, opts))));
            }
        }
    }
    if checks.is_empty() {
        let what = only.map_or("the document".to_string(), |o| format!("{o:?}"));
        return Err(Outcome::usage(format!("nothing in {what} to check for this law")));
    }
    Ok((checks, skipped))
}

pub fn verify(law: Law, path: &Path, max_degree: usize, only: Option<&str>, bar: BarFlags) -> Outcome {
    let doc = match load(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let opts = options(bar);
    let (checks, skipped) = match targets(law, &doc, max_degree, opts, only) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let results = par::map_slice(&checks, |(name, f)| {
        f().map(|mut r| {
            r.subject = name.clone();
            r
        })
    });
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => return law_error(e),
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let law_name = clap::ValueEnum::to_possible_value(&law).expect("named").get_name().to_string();
    let out = match bar.format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(s, "{} {} {}", if r.pass { "PASS" } else { "FAIL" }, r.law, r.subject);
                for l in &r.lines {
                    let _ = writeln!(s, "  {l}");
                }
                for u in &r.unverified {
                    let _ = writeln!(s, "  unverified: {u}");
                }
            }
            for k in &skipped {
                let _ = writeln!(s, "skipped {k}");
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            let _ = writeln!(s, "{law_name}: {passed}/{} passed ({})", reports.len(), mode(opts.normalized));
            s
        }
        Format::Json => {
            let doc = json!({
                "law": law_name,
                "pass": pass,
                "mode": mode(opts.normalized),
                "max_degree": max_degree,
                "reports": reports,
                "skipped": skipped,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    };
    Outcome::ok(out, pass)
}
