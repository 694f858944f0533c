//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs as a plain binary so the lines always reach the terminal. Exits
//! nonzero if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use xmod_homology::abgrp::{smith_normal_form, FgAbelian, PresentedAb};
use xmod_homology::bar::{
    classical_group_homology, h0_closed_form, h1_closed_form, xmod_homology, BarOptions, CoefficientSystem, XModHomology,
};
use xmod_homology::grp::{commutator_data, FiniteGroup, GroupAction, GroupHom, GroupOps, Subgroup};
use xmod_homology::laws::{check_five_term, check_h1_closed_form, check_inclusion_reduction, check_weak_invariance, LawReport};
use xmod_homology::par::{set_execution, Execution};
use xmod_homology::simp::SimplicialGroup;
use xmod_homology::xmod::{inclusion_xmod, AbelianXMod, CrossedModule, ShortExactXMod, XModAction, XModMorphism};

type Outcome = Result<String, String>;

fn c(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n))
}

fn z() -> FgAbelian {
    FgAbelian::free(1)
}

fn zmod(orders: &[i64]) -> FgAbelian {
    FgAbelian::from_cyclic_orders(orders)
}

fn zero() -> FgAbelian {
    FgAbelian::trivial()
}

fn unnormalized() -> BarOptions {
    BarOptions { normalized: false, ..Default::default() }
}

fn normalized() -> BarOptions {
    BarOptions { normalized: true, ..Default::default() }
}

fn integral() -> CoefficientSystem {
    CoefficientSystem::IntegralTrivial
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_groups(what: &str, got: &[FgAbelian], want: &[FgAbelian]) -> Result<(), String> {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

/// Periodic resolution of a cyclic group: `Z`, then `Z/m` in odd degrees
/// and `0` in positive even degrees.
fn cyclic_oracle(m: i64, n: usize) -> FgAbelian {
    match n {
        0 => z(),
        k if k % 2 == 1 => zmod(&[m]),
        _ => zero(),
    }
}

/// Kunneth for `C2 x C2` with integer coefficients.
fn klein_oracle(n: usize) -> FgAbelian {
    match n {
        0 => z(),
        1 => zmod(&[2, 2]),
        2 => zmod(&[2]),
        3 => zmod(&[2, 2, 2]),
        _ => unreachable!(),
    }
}

/// Universal coefficients: `H_n(G; Z/2) = H_n(G) ⊗ Z/2 ⊕ Tor(H_{n-1}(G), Z/2)`.
fn mod2_oracle(integral: impl Fn(usize) -> FgAbelian, n: usize) -> FgAbelian {
    let even = |g: &FgAbelian| g.divisors().iter().filter(|d| d.divides(&2.into())).count();
    let tensor = integral(n).rank() + even(&integral(n));
    let tor = if n == 0 { 0 } else { even(&integral(n - 1)) };
    zmod(&vec![2; tensor + tor])
}

fn zero_boundary_c2() -> CrossedModule {
    CrossedModule::new(GroupHom::zero(c(2), c(2)), GroupAction::trivial(c(2), c(2))).unwrap()
}

fn c2_in_c4() -> CrossedModule {
    inclusion_xmod(&Subgroup::new(c(4), vec![0, 2]).unwrap()).unwrap()
}

fn a3_in_s3() -> CrossedModule {
    let s3 = Arc::new(FiniteGroup::symmetric3());
    inclusion_xmod(&commutator_data(&s3, None).unwrap()).unwrap()
}

/// The fixture crossed modules with their expected `H_1`.
fn fixtures() -> Vec<(&'static str, CrossedModule, FgAbelian)> {
    let s3 = Arc::new(FiniteGroup::symmetric3());
    vec![
        ("(C2,C2,0)", zero_boundary_c2(), zmod(&[2])),
        ("(C2,C2,id)", CrossedModule::identity(c(2)), zero()),
        ("(C4,C4,id)", CrossedModule::identity(c(4)), zero()),
        ("(S3,S3,id)", CrossedModule::identity(s3), zero()),
        ("C2<C4", c2_in_c4(), zmod(&[2])),
        ("A3<S3", a3_in_s3(), zmod(&[2])),
    ]
}

fn homology(x: &CrossedModule, coeffs: &CoefficientSystem, n: usize, opts: BarOptions) -> Result<XModHomology, String> {
    xmod_homology(x, coeffs, n, opts).map_err(|e| e.to_string())
}

fn c2_trivial_module(actor: &CrossedModule) -> CoefficientSystem {
    CoefficientSystem::Module(XModAction::trivial(actor.clone(), AbelianXMod::of_group(c(2)).unwrap()))
}

fn closed_form_h1() -> Outcome {
    for (name, x, want) in fixtures() {
        let h = homology(&x, &integral(), 1, unnormalized())?;
        let closed = h1_closed_form(&x).map_err(|e| e.to_string())?;
        ensure(*h.group(1) == closed, || format!("{name}: bicomplex {} vs closed form {closed}", h.group(1)))?;
        ensure(closed == want, || format!("{name}: closed form {closed}, expected {want}"))?;
    }
    Ok("H_1 matches the closed form on 6 fixtures".into())
}

fn closed_form_h0() -> Outcome {
    for (name, x, _) in fixtures() {
        for (label, coeffs, want) in [("Z", integral(), z()), ("Z/2", c2_trivial_module(&x), zmod(&[2]))] {
            let h = homology(&x, &coeffs, 0, unnormalized())?;
            let closed = h0_closed_form(&x, &coeffs).map_err(|e| e.to_string())?;
            ensure(*h.group(0) == closed && closed == want, || {
                format!("{name} with {label}: bicomplex {}, closed form {closed}, expected {want}", h.group(0))
            })?;
        }
    }
    Ok("H_0 matches the closed form on 6 fixtures, 2 coefficient systems".into())
}

fn classical_agreement() -> Outcome {
    type Oracle = fn(usize) -> FgAbelian;
    let groups: [(&str, Arc<FiniteGroup>, Oracle); 3] = [
        ("C2", c(2), |n| cyclic_oracle(2, n)),
        ("C3", c(3), |n| cyclic_oracle(3, n)),
        ("K4", Arc::new(FiniteGroup::klein_four()), klein_oracle),
    ];
    for (name, g, oracle) in groups {
        let x = CrossedModule::of_group(g.clone());
        for (label, coeffs) in [("Z", integral()), ("Z/2", c2_trivial_module(&x))] {
            let h = homology(&x, &coeffs, 3, normalized())?;
            let module = match label {
                "Z" => PresentedAb::free(1),
                _ => PresentedAb::cyclic(2),
            };
            let classical: Vec<FgAbelian> = (0..=3)
                .map(|n| classical_group_homology(&*g, &module, None, n, true, 1 << 20))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let want: Vec<FgAbelian> =
                (0..=3).map(|n| if label == "Z" { oracle(n) } else { mod2_oracle(oracle, n) }).collect();
            expect_groups(&format!("{name}, {label}, crossed module"), &h.groups(), &want)?;
            expect_groups(&format!("{name}, {label}, classical"), &classical, &want)?;
        }
    }
    Ok("(0,G,0) agrees with H_n(G,A) for G in C2,C3,K4, A in Z,Z/2, n <= 3".into())
}

fn cyclic_oracle_check() -> Outcome {
    for m in [2usize, 3, 4] {
        for normalized in [false, true] {
            for n in 0..=4 {
                let got = classical_group_homology(&*c(m), &PresentedAb::free(1), None, n, normalized, 1 << 20)
                    .map_err(|e| e.to_string())?;
                let want = cyclic_oracle(m as i64, n);
                ensure(got == want, || format!("H_{n}(C{m}) = {got}, oracle {want}"))?;
            }
        }
    }
    Ok("C2, C3, C4 through degree 4, both bar modes".into())
}

fn inclusion_reduction(opts: BarOptions, budget: Duration) -> Result<Duration, String> {
    let t = Instant::now();
    let want: Vec<FgAbelian> = (0..=3).map(|n| cyclic_oracle(2, n)).collect();
    for (name, x) in [("C2<C4", c2_in_c4()), ("A3<S3", a3_in_s3())] {
        let h = homology(&x, &integral(), 3, opts)?;
        expect_groups(name, &h.groups(), &want)?;
    }
    let r = check_inclusion_reduction(&a3_in_s3().image(), 3, opts).map_err(|e| e.to_string())?;
    ensure(r.pass, || format!("{r:?}"))?;
    let elapsed = t.elapsed();
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))?;
    Ok(elapsed)
}

fn inclusion_both_modes() -> Outcome {
    let u = inclusion_reduction(unnormalized(), Duration::from_secs(300))?;
    let n = inclusion_reduction(normalized(), Duration::from_secs(60))?;
    Ok(format!("C2<C4 and A3<S3 equal H_n(C2) for n <= 3 (unnormalized {u:.2?}, normalized {n:.2?})"))
}

fn contractibility() -> Outcome {
    let want = [z(), zero(), zero(), zero()];
    for m in [2, 4] {
        let h = homology(&CrossedModule::identity(c(m)), &integral(), 3, unnormalized())?;
        expect_groups(&format!("(C{m},C{m},id)"), &h.groups(), &want)?;
    }
    Ok("(C2,C2,id) and (C4,C4,id) are acyclic through degree 3".into())
}

fn five_term() -> Outcome {
    let (a, b, q) = (CrossedModule::of_group(c(2)), CrossedModule::of_group(c(4)), CrossedModule::of_group(c(2)));
    let one = Arc::new(FiniteGroup::trivial());
    let inc = GroupHom::new(c(2), c(4), vec![0, 2]).unwrap();
    let proj = GroupHom::new(c(4), c(2), vec![0, 1, 0, 1]).unwrap();
    let left = XModMorphism::new(a, b.clone(), GroupHom::identity(one.clone()), inc).map_err(|e| e.to_string())?;
    let right = XModMorphism::new(b, q, GroupHom::identity(one), proj).map_err(|e| e.to_string())?;
    let s = ShortExactXMod::new(left, right).map_err(|e| e.to_string())?;
    let r = check_five_term(&s, unnormalized()).map_err(|e| e.to_string())?;
    ensure(r.pass, || format!("{r:?}"))?;
    ensure(r.lines[0] == "0 -> 0 -> Z/2 -> Z/4 -> Z/2 -> 0", || r.lines[0].clone())?;
    ensure(r.lines.len() >= 4, || format!("{r:?}"))?;
    Ok(r.lines[0].clone())
}

fn weak_invariance() -> Outcome {
    let x = CrossedModule::identity(c(2));
    let m = XModMorphism::to_trivial(&x);
    let r = check_weak_invariance(&m, 3, unnormalized()).map_err(|e| e.to_string())?;
    ensure(r.pass, || format!("{r:?}"))?;
    let src = homology(m.source(), &integral(), 3, unnormalized())?.groups();
    let tgt = homology(m.target(), &integral(), 3, unnormalized())?.groups();
    expect_groups("(C2,C2,id) -> trivial", &src, &tgt)?;
    Ok("(C2,C2,id) -> 1 preserves H_0..H_3".into())
}

/// Crossed modules with `|H|, |G| <= 4`.
fn small_xmods() -> Vec<(&'static str, CrossedModule)> {
    let k4 = Arc::new(FiniteGroup::klein_four());
    let into_k4 = GroupHom::new(c(2), k4.clone(), vec![0, 1]).unwrap();
    let c4_to_c2 = GroupHom::new(c(4), c(2), vec![0, 1, 0, 1]).unwrap();
    vec![
        ("(C2,C2,0)", zero_boundary_c2()),
        ("(C2,C2,id)", CrossedModule::identity(c(2))),
        ("(C4,C4,id)", CrossedModule::identity(c(4))),
        ("C2<C4", c2_in_c4()),
        ("(C2,K4)", CrossedModule::new(into_k4, GroupAction::trivial(k4.clone(), c(2))).unwrap()),
        ("(C4,C2)", CrossedModule::new(c4_to_c2, GroupAction::trivial(c(2), c(4))).unwrap()),
        ("(1,K4,0)", CrossedModule::of_group(k4)),
    ]
}

fn sample_actions() -> Result<Vec<(&'static str, XModAction)>, String> {
    let err = |e: xmod_homology::xmod::XModError| e.to_string();
    let one = Arc::new(FiniteGroup::trivial());
    let flip = GroupAction::new(c(2), c(3), &[vec![0, 1, 2], vec![0, 2, 1]]).map_err(|e| e.to_string())?;
    Ok(vec![
        ("trivial on (C2,C2,id)", XModAction::trivial(CrossedModule::identity(c(2)), AbelianXMod::of_group(c(2)).map_err(err)?)),
        (
            "C2 inverting C3",
            XModAction::new(
                CrossedModule::of_group(c(2)),
                AbelianXMod::of_group(c(3)).map_err(err)?,
                GroupAction::trivial(c(2), one),
                flip,
                vec![vec![0, 0, 0]],
            )
            .map_err(err)?,
        ),
        (
            "bilinear xi",
            XModAction::new(
                CrossedModule::identity(c(2)),
                AbelianXMod::from_hom(GroupHom::zero(c(2), c(2))).map_err(err)?,
                GroupAction::trivial(c(2), c(2)),
                GroupAction::trivial(c(2), c(2)),
                vec![vec![0, 0], vec![0, 1]],
            )
            .map_err(err)?,
        ),
    ])
}

fn structural() -> Outcome {
    let mut nerves = 0;
    for (name, x) in small_xmods() {
        ensure(x.validate().is_empty(), || format!("{name}: axioms fail"))?;
        let s = SimplicialGroup::nerve(Arc::new(x), 5).map_err(|e| e.to_string())?;
        let v = s.check_identities();
        ensure(v.is_empty(), || format!("{name}: simplicial identities {v:?}"))?;
        nerves += 1;
    }
    let actions = sample_actions()?;
    for (name, a) in &actions {
        ensure(a.validate().is_empty(), || format!("{name}: xi identities fail"))?;
    }
    let broken = XModAction::new_unchecked(
        CrossedModule::identity(c(2)),
        AbelianXMod::new(CrossedModule::identity(c(2))).map_err(|e| e.to_string())?,
        GroupAction::trivial(c(2), c(2)),
        GroupAction::trivial(c(2), c(2)),
        vec![vec![1, 1], vec![1, 1]],
    )
    .map_err(|e| e.to_string())?;
    ensure(!broken.validate().is_empty(), || "broken xi passed validation".into())?;

    let mut complexes = 0;
    let mut subjects: Vec<(String, CrossedModule, CoefficientSystem)> =
        fixtures().into_iter().map(|(n, x, _)| (n.to_string(), x, integral())).collect();
    subjects.extend(actions.into_iter().map(|(n, a)| (n.to_string(), a.actor().clone(), CoefficientSystem::Module(a))));
    for (name, x, coeffs) in subjects {
        let top = if x.g().order() * x.h().order() > 16 { 2 } else { 3 };
        let u = homology(&x, &coeffs, top, unnormalized())?;
        let n = homology(&x, &coeffs, top, normalized())?;
        for h in [&u, &n] {
            h.bicomplex.verify().map_err(|e| format!("{name}: {e}"))?;
            h.total.verify().map_err(|e| format!("{name}: {e}"))?;
            complexes += 1;
        }
        expect_groups(&format!("{name} normalized vs unnormalized"), &n.groups(), &u.groups())?;
    }
    Ok(format!("{nerves} nerves to level 5, 4 xi checks, {complexes} complexes with d^2 = 0, bar modes agree"))
}

/// Everything a run produces except wall time.
#[derive(PartialEq, Debug)]
struct Snapshot {
    groups: Vec<Vec<FgAbelian>>,
    bicomplexes: Vec<xmod_homology::abgrp::BiComplexAb>,
    smith: Vec<Vec<xmod_homology::abgrp::Smith>>,
    reports: Vec<LawReport>,
}

fn snapshot() -> Result<Snapshot, String> {
    let mut s = Snapshot { groups: vec![], bicomplexes: vec![], smith: vec![], reports: vec![] };
    for (_, x, _) in fixtures() {
        let h = homology(&x, &integral(), 2, normalized())?;
        s.groups.push(h.groups());
        s.smith.push((1..=h.total.top()).map(|k| smith_normal_form(&h.total.boundary(k))).collect());
        s.bicomplexes.push(h.bicomplex);
        s.reports.push(check_h1_closed_form(&x, normalized()).map_err(|e| e.to_string())?);
    }
    Ok(s)
}

fn determinism() -> Outcome {
    let first = snapshot()?;
    let second = snapshot()?;
    set_execution(Execution::Sequential);
    let sequential = snapshot();
    set_execution(Execution::Parallel);
    let sequential = sequential?;
    ensure(first == second, || "two parallel runs differ".into())?;
    ensure(first == sequential, || "parallel and sequential runs differ".into())?;
    Ok("repeated and sequential runs give identical matrices, SNFs and reports".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("closed-form H_1", Duration::from_secs(10), closed_form_h1),
        ("closed-form H_0", Duration::from_secs(10), closed_form_h0),
        ("classical agreement", Duration::from_secs(60), classical_agreement),
        ("cyclic-group oracle", Duration::from_secs(60), cyclic_oracle_check),
        ("inclusion reduction", Duration::from_secs(360), inclusion_both_modes),
        ("contractibility", Duration::from_secs(300), contractibility),
        ("five-term sequence", Duration::from_secs(120), five_term),
        ("weak-equivalence invariance", Duration::from_secs(300), weak_invariance),
        ("structural suites", Duration::from_secs(600), structural),
        ("determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = run();
        let elapsed = t.elapsed();
        let result = result.and_then(|msg| {
            if elapsed < *budget {
                Ok(msg)
            } else {
                Err(format!("took {elapsed:.2?}, budget {budget:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{elapsed:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
