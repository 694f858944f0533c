use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::abgrp::{BiComplexAb, ChainComplex, FgAbelian, Homology, IntMatrix, PresentedAb, SparseVec};
use crate::grp::GroupOps;
use crate::par;
use crate::simp::{nerve_action, NerveAction, NerveLevel, SimplicialAbelian, SimplicialGroup};
use crate::xmod::{CrossedModule, ModuleMorphism, XModMorphism};

use super::column::{TensoredBarColumn, Tuples};
use super::{BarError, CoefficientSystem};

/// Largest bicomplex entry built by default, in generators.
pub const DEFAULT_MAX_ENTRY: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BarOptions {
    pub normalized: bool,
    pub max_entry: usize,
}

impl Default for BarOptions {
    fn default() -> Self {
        BarOptions { normalized: false, max_entry: DEFAULT_MAX_ENTRY }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EntrySize {
    pub p: usize,
    pub q: usize,
    pub generators: usize,
}

enum Resolved {
    Integral(SimplicialAbelian),
    Module(Box<NerveAction>),
}

impl Resolved {
    fn new(x: &CrossedModule, coeffs: &CoefficientSystem, top: usize) -> Result<Self, BarError> {
        Ok(match coeffs {
            CoefficientSystem::IntegralTrivial => Resolved::Integral(SimplicialAbelian::constant(PresentedAb::free(1), top)),
            CoefficientSystem::Module(a) => {
                check_actor(x, coeffs)?;
                Resolved::Module(Box::new(nerve_action(a, top)?))
            }
        })
    }

    fn module(&self) -> &SimplicialAbelian {
        match self {
            Resolved::Integral(s) => s,
            Resolved::Module(a) => a.module(),
        }
    }

    fn action(&self, p: usize) -> Option<&[IntMatrix]> {
        match self {
            Resolved::Integral(_) => None,
            Resolved::Module(a) => Some(a.matrices(p)),
        }
    }
}

fn check_actor(x: &CrossedModule, coeffs: &CoefficientSystem) -> Result<(), BarError> {
    match coeffs {
        CoefficientSystem::Module(a) if a.actor() != x => {
            Err(BarError::Mismatch("coefficients are over a different crossed module".into()))
        }
        _ => Ok(()),
    }
}

fn module_generators(coeffs: &CoefficientSystem, p: usize) -> usize {
    match coeffs {
        CoefficientSystem::IntegralTrivial => 1,
        CoefficientSystem::Module(a) => {
            p * a.module().c().generators().len() + a.module().a().generators().len()
        }
    }
}

/// Generator counts of every entry with `p + q <= top`, failing on the
/// first entry over the cap. Nothing is built.
pub fn entry_sizes(
    x: &CrossedModule,
    coeffs: &CoefficientSystem,
    top: usize,
    opts: BarOptions,
) -> Result<Vec<EntrySize>, BarError> {
    let (nh, ng) = (x.h().order(), x.g().order());
    let mut out = Vec::new();
    for total in 0..=top {
        for p in 0..=total {
            let q = total - p;
            let size = (0..p)
                .try_fold(ng, |acc, _| acc.checked_mul(nh))
                .and_then(|order| Tuples::new(order, opts.normalized).count(q))
                .and_then(|t| t.checked_mul(module_generators(coeffs, p)));
            match size {
                Some(s) if s <= opts.max_entry => out.push(EntrySize { p, q, generators: s }),
                _ => return Err(BarError::TooLarge { p, q, generators: size, cap: opts.max_entry }),
            }
        }
    }
    Ok(out)
}

/// Entries `B_q(G_p) ⊗ A_p` for `p + q <= top`, vertical bar boundaries and
/// horizontal alternating face sums.
pub fn build_bicomplex(
    x: &CrossedModule,
    coeffs: &CoefficientSystem,
    top: usize,
    opts: BarOptions,
) -> Result<(BiComplexAb, Vec<EntrySize>), BarError> {
    let sizes = entry_sizes(x, coeffs, top, opts)?;
    let nerve = SimplicialGroup::nerve(Arc::new(x.clone()), top)?;
    let res = Resolved::new(x, coeffs, top)?;
    let module = res.module();

    let built = par::map_slice(&sizes, |e| {
        let (p, q) = (e.p, e.q);
        let col = TensoredBarColumn::new(nerve.level(p), module.level(p), res.action(p), opts.normalized);
        let entry = col.term(q);
        let vertical = (q >= 1).then(|| col.boundary(q));
        let horizontal = (p >= 1).then(|| horizontal_map(&nerve, module, p, q, opts.normalized));
        (entry, vertical, horizontal)
    });
    let mut b = BiComplexAb::new();
    for (e, (entry, v, h)) in sizes.iter().zip(built) {
        b.set_entry(e.p, e.q, entry);
        if let Some(v) = v {
            b.set_vertical(e.p, e.q, v);
        }
        if let Some(h) = h {
            b.set_horizontal(e.p, e.q, h);
        }
    }
    Ok((b, sizes))
}

/// `b ⊗ a ↦ Σ (-1)^i d_i(b) ⊗ d_i(a)` from `(p, q)` to `(p - 1, q)`.
fn horizontal_map(nerve: &SimplicialGroup, module: &SimplicialAbelian, p: usize, q: usize, normalized: bool) -> IntMatrix {
    let (src, dst) = (nerve.level(p), nerve.level(p - 1));
    let (ts, td) = (Tuples::new(src.order(), normalized), Tuples::new(dst.order(), normalized));
    let (k, k2) = (module.level(p).generators(), module.level(p - 1).generators());
    let n = ts.count(q).expect("size checked");
    let blocks = par::map_range(n, |t| {
        let mut elems = Vec::with_capacity(q);
        ts.decode(t, q, &mut elems);
        let mut cols = vec![SparseVec::new(); k];
        let mut image = Vec::with_capacity(q);
        for i in 0..=p {
            image.clear();
            image.extend(elems.iter().map(|&g| src.face(i, g)));
            let Some(idx) = td.encode(&image) else { continue };
            let d = module.face(p, i);
            let sign = if i % 2 == 0 { 1i64 } else { -1 };
            for (j, col) in cols.iter_mut().enumerate() {
                *col = col.axpy(&sign.into(), &d.column(j).shifted(idx * k2));
            }
        }
        cols
    });
    IntMatrix::from_columns(td.count(q).expect("size checked") * k2, blocks.into_iter().flatten().collect())
}

/// `H_0..H_n` of a crossed module with coefficients, through the total
/// complex of the bicomplex truncated at total degree `n + 1`.
#[derive(Clone, Debug)]
pub struct XModHomology {
    pub xmod: CrossedModule,
    pub coefficients: CoefficientSystem,
    pub options: BarOptions,
    pub bicomplex: BiComplexAb,
    pub total: ChainComplex,
    pub homology: Vec<Homology>,
    pub entries: Vec<EntrySize>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl XModHomology {
    pub fn max_degree(&self) -> usize {
        self.homology.len() - 1
    }

    pub fn group(&self, n: usize) -> &FgAbelian {
        self.homology[n].group()
    }

    pub fn groups(&self) -> Vec<FgAbelian> {
        self.homology.iter().map(|h| h.group().clone()).collect()
    }
}

pub fn xmod_homology(
    x: &CrossedModule,
    coeffs: &CoefficientSystem,
    n: usize,
    opts: BarOptions,
) -> Result<XModHomology, BarError> {
    check_actor(x, coeffs)?;
    let mut timings = Vec::new();
    let t = Instant::now();
    let (bicomplex, entries) = build_bicomplex(x, coeffs, n + 1, opts)?;
    timings.push(("bicomplex", t.elapsed()));
    let t = Instant::now();
    let total = bicomplex.total_complex(n + 1)?;
    timings.push(("total complex", t.elapsed()));
    let t = Instant::now();
    let homology = par::map_range(n + 1, |k| total.homology(k)).into_iter().collect::<Result<Vec<_>, _>>()?;
    timings.push(("homology", t.elapsed()));
    Ok(XModHomology {
        xmod: x.clone(),
        coefficients: coeffs.clone(),
        options: opts,
        bicomplex,
        total,
        homology,
        entries,
        timings,
    })
}

fn same_shape(src: &XModHomology, tgt: &XModHomology) -> Result<(), BarError> {
    if src.options.normalized != tgt.options.normalized || src.total.top() != tgt.total.top() {
        return Err(BarError::Mismatch("complexes differ in mode or degree".into()));
    }
    Ok(())
}

/// Assembles per-entry maps into total-degree block-diagonal matrices.
fn total_blocks(top: usize, entry: impl Fn(usize, usize) -> IntMatrix + Sync) -> Vec<IntMatrix> {
    par::map_range(top + 1, |d| {
        let blocks: Vec<IntMatrix> = (0..=d).map(|p| entry(p, d - p)).collect();
        IntMatrix::block_diag(&blocks.iter().collect::<Vec<_>>())
    })
}

/// Chain map of total complexes induced by a morphism, integral coefficients.
pub fn morphism_chain_map(m: &XModMorphism, src: &XModHomology, tgt: &XModHomology) -> Result<Vec<IntMatrix>, BarError> {
    same_shape(src, tgt)?;
    if src.coefficients != CoefficientSystem::IntegralTrivial || tgt.coefficients != CoefficientSystem::IntegralTrivial {
        return Err(BarError::Mismatch("morphism chain maps need integral coefficients".into()));
    }
    if &src.xmod != m.source() || &tgt.xmod != m.target() {
        return Err(BarError::Mismatch("morphism does not match the complexes".into()));
    }
    let top = src.total.top();
    let (sx, sy) = (Arc::new(m.source().clone()), Arc::new(m.target().clone()));
    let levels = (0..=top)
        .map(|p| Ok((NerveLevel::new(sx.clone(), p)?, NerveLevel::new(sy.clone(), p)?)))
        .collect::<Result<Vec<_>, BarError>>()?;
    let normalized = src.options.normalized;
    Ok(total_blocks(top, |p, q| {
        let (a, b) = &levels[p];
        let (ta, tb) = (Tuples::new(a.order(), normalized), Tuples::new(b.order(), normalized));
        let n = ta.count(q).expect("size checked");
        let cols = par::map_range(n, |t| {
            let mut elems = Vec::with_capacity(q);
            ta.decode(t, q, &mut elems);
            let image: Vec<usize> = elems.iter().map(|&e| a.map_element(m, b, e)).collect();
            tb.encode(&image).map_or_else(SparseVec::new, SparseVec::unit)
        });
        IntMatrix::from_columns(tb.count(q).expect("size checked"), cols)
    }))
}

/// Chain map of total complexes induced by a map of coefficient modules.
pub fn module_chain_map(f: &ModuleMorphism, src: &XModHomology, tgt: &XModHomology) -> Result<Vec<IntMatrix>, BarError> {
    same_shape(src, tgt)?;
    if src.coefficients != CoefficientSystem::Module(f.source().clone())
        || tgt.coefficients != CoefficientSystem::Module(f.target().clone())
        || src.xmod != tgt.xmod
    {
        return Err(BarError::Mismatch("module morphism does not match the complexes".into()));
    }
    let (fc, fa) = f.matrices();
    let order = |p: usize| (0..p).fold(src.xmod.g().order(), |acc, _| acc * src.xmod.h().order());
    let normalized = src.options.normalized;
    Ok(total_blocks(src.total.top(), |p, q| {
        let mut parts = vec![&fc; p];
        parts.push(&fa);
        let level = IntMatrix::block_diag(&parts);
        level.repeat_diag(Tuples::new(order(p), normalized).count(q).expect("size checked"))
    }))
}
