use std::sync::Arc;

use super::action::GroupAction;
use super::group::FiniteGroup;
use super::{GroupOps, GrpError};

/// A homomorphism between materialized groups, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    dom: Arc<FiniteGroup>,
    cod: Arc<FiniteGroup>,
    image: Vec<u32>,
}

impl GroupHom {
    pub fn new(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>, image: Vec<usize>) -> Result<Self, GrpError> {
        if image.len() != dom.order() {
            return Err(GrpError::Shape(format!(
                "image has length {}, domain has order {}",
                image.len(),
                dom.order()
            )));
        }
        if let Some((i, _)) = image.iter().enumerate().find(|(_, &x)| x >= cod.order()) {
            return Err(GrpError::OutOfRange(i, 0));
        }
        let f = GroupHom { dom, cod, image: image.into_iter().map(|x| x as u32).collect() };
        if let Some((a, b)) = f.first_failure() {
            return Err(GrpError::NotAHomomorphism(a, b));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>, image: Vec<usize>) -> Self {
        debug_assert_eq!(image.len(), dom.order());
        GroupHom { dom, cod, image: image.into_iter().map(|x| x as u32).collect() }
    }

    /// Extends images of generators along a breadth-first closure, checking
    /// consistency on every edge.
    pub fn from_generators(
        dom: Arc<FiniteGroup>,
        cod: Arc<FiniteGroup>,
        gens: &[usize],
        images: &[usize],
    ) -> Result<Self, GrpError> {
        if gens.len() != images.len() {
            return Err(GrpError::Shape("generator and image lists differ in length".into()));
        }
        if gens.iter().any(|&g| g >= dom.order()) || images.iter().any(|&x| x >= cod.order()) {
            return Err(GrpError::Shape("generator or image out of range".into()));
        }
        let image = extend_on_generators(&*dom, &*cod, gens, images).ok_or(GrpError::NoExtension)?;
        if image.iter().any(|x| x.is_none()) {
            return Err(GrpError::Shape("listed elements do not generate the domain".into()));
        }
        let image = image.into_iter().map(Option::unwrap).collect();
        Self::new(dom, cod, image)
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let image = g.elements().collect();
        GroupHom::new_unchecked(g.clone(), g, image)
    }

    pub fn zero(dom: Arc<FiniteGroup>, cod: Arc<FiniteGroup>) -> Self {
        let image = vec![0; dom.order()];
        GroupHom::new_unchecked(dom, cod, image)
    }

    pub fn dom(&self) -> &Arc<FiniteGroup> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteGroup> {
        &self.cod
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.cod.order(), other.dom.order());
        let image = self.dom.elements().map(|x| other.apply(self.apply(x))).collect();
        GroupHom::new_unchecked(self.dom.clone(), other.cod.clone(), image)
    }

    fn first_failure(&self) -> Option<(usize, usize)> {
        let (d, c) = (&*self.dom, &*self.cod);
        if self.apply(0) != 0 {
            return Some((0, 0));
        }
        for a in d.elements() {
            for b in d.elements() {
                if self.apply(d.mul(a, b)) != c.mul(self.apply(a), self.apply(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        (1..self.dom.order()).all(|x| self.apply(x) != 0)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.order()];
        for &x in &self.image {
            hit[x as usize] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.order() == self.cod.order() && self.is_injective()
    }

    /// Restriction of this map to a subgroup and corestriction to a
    /// subgroup containing the image, on the relabelled subgroup carriers.
    pub fn restrict(&self, src: &Subgroup, dst: &Subgroup) -> Result<GroupHom, GrpError> {
        let (sg, _) = src.to_group();
        let (dg, _) = dst.to_group();
        let mut image = Vec::with_capacity(src.order());
        for x in src.members() {
            let y = self.apply(x);
            image.push(dst.position(y).ok_or_else(|| GrpError::NotASubgroup("image leaves target".into()))?);
        }
        Ok(GroupHom::new_unchecked(Arc::new(sg), Arc::new(dg), image))
    }
}

/// Breadth-first extension of generator images. Returns `None` on an
/// inconsistency; unreached elements stay `None`.
pub(crate) fn extend_on_generators<G: GroupOps, H: GroupOps>(
    dom: &G,
    cod: &H,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut image = vec![None; dom.order()];
    image[0] = Some(0);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        let fx = image[x].expect("queued");
        for (&s, &t) in gens.iter().zip(images) {
            let y = dom.mul(x, s);
            let fy = cod.mul(fx, t);
            match image[y] {
                None => {
                    image[y] = Some(fy);
                    queue.push(y);
                }
                Some(z) if z != fy => return None,
                _ => {}
            }
        }
        head += 1;
    }
    Some(image)
}

/// A subgroup as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<u32>,
}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self, GrpError> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(GrpError::NotASubgroup("identity missing".into()));
        }
        if members.iter().any(|&x| x >= parent.order()) {
            return Err(GrpError::NotASubgroup("member out of range".into()));
        }
        let mut mask = vec![false; parent.order()];
        for &x in &members {
            mask[x] = true;
        }
        for &a in &members {
            if !mask[parent.inv(a)] {
                return Err(GrpError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &members {
                if !mask[parent.mul(a, b)] {
                    return Err(GrpError::NotASubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        Ok(Subgroup { parent, members: members.into_iter().map(|x| x as u32).collect() })
    }

    fn from_mask(parent: Arc<FiniteGroup>, mask: &[bool]) -> Self {
        let members = (0..mask.len()).filter(|&i| mask[i]).map(|i| i as u32).collect();
        Subgroup { parent, members }
    }

    pub fn generated_by(parent: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let mask = parent.closure_mask(gens);
        Self::from_mask(parent, &mask)
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(parent: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let conjugates: Vec<usize> = gens
            .iter()
            .flat_map(|&s| parent.elements().map(move |g| (g, s)))
            .map(|(g, s)| parent.conj(g, s))
            .collect();
        let mut sorted = conjugates;
        sorted.sort_unstable();
        sorted.dedup();
        Self::generated_by(parent, &sorted)
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let members = (0..parent.order() as u32).collect();
        Subgroup { parent, members }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        Subgroup { parent, members: vec![0] }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.iter().map(|&x| x as usize).collect()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&(x as u32)).is_ok()
    }

    /// Index of `x` in the member list, which is its id in [`Self::to_group`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&(x as u32)).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// First `(g, n)` with `g n g^-1` outside the subgroup.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        for g in self.parent.elements() {
            for &n in &self.members {
                if !self.contains(self.parent.conj(g, n as usize)) {
                    return Some((g, n as usize));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// The subgroup as a group in its own right, ids in member order, with
    /// the inclusion into the parent.
    pub fn to_group(&self) -> (FiniteGroup, GroupHom) {
        let n = self.members.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &self.members {
            for &b in &self.members {
                let p = self.parent.mul(a as usize, b as usize);
                table.push(self.position(p).expect("closed") as u32);
            }
        }
        let mut g = FiniteGroup::from_flat_unchecked(n, table);
        if let Some(l) = self.parent.labels() {
            g = g.with_labels(self.members.iter().map(|&x| l[x as usize].clone()).collect());
        }
        let g = Arc::new(g);
        let incl = GroupHom::new_unchecked(g.clone(), self.parent.clone(), self.members());
        (Arc::unwrap_or_clone(g.clone()), incl)
    }

    /// Product subgroup `self * other`; both must be normal for this to be a subgroup.
    pub fn join_normal(&self, other: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self.members().into_iter().chain(other.members()).collect();
        Subgroup::generated_by(self.parent.clone(), &gens)
    }
}

pub fn kernel_image(f: &GroupHom) -> (Subgroup, Subgroup) {
    let kernel: Vec<bool> = f.dom.elements().map(|x| f.apply(x) == 0).collect();
    let mut image = vec![false; f.cod.order()];
    for x in f.dom.elements() {
        image[f.apply(x)] = true;
    }
    (Subgroup::from_mask(f.dom.clone(), &kernel), Subgroup::from_mask(f.cod.clone(), &image))
}

/// `G/N` with its projection. Cosets are numbered by their smallest member,
/// so the identity coset is `0`.
pub fn quotient_group(n: &Subgroup) -> Result<(Arc<FiniteGroup>, GroupHom), GrpError> {
    if let Some((g, x)) = n.normality_witness() {
        return Err(GrpError::NotNormal(g, x));
    }
    let g = n.parent.clone();
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for m in n.members() {
                coset[g.mul(x, m)] = id;
            }
        }
    }
    let k = reps.len();
    let table = reps
        .iter()
        .flat_map(|&a| reps.iter().map(|&b| coset[g.mul(a, b)] as u32).collect::<Vec<_>>())
        .collect();
    let q = Arc::new(FiniteGroup::from_flat_unchecked(k, table));
    let proj = GroupHom::new_unchecked(g, q.clone(), coset);
    Ok((q, proj))
}

/// Without an action, the commutator subgroup `[G, G]`. With an action of
/// some group `A` on `g`, the normal subgroup of `g` generated by the
/// elements `(a.x) x^-1`.
pub fn commutator_data(g: &Arc<FiniteGroup>, act: Option<&GroupAction>) -> Result<Subgroup, GrpError> {
    let gens: Vec<usize> = match act {
        None => g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .map(|(a, b)| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))))
            .collect(),
        Some(act) => {
            if act.target().order() != g.order() || **act.target() != **g {
                return Err(GrpError::Shape("action target differs from the group".into()));
            }
            act.actor()
                .elements()
                .flat_map(|a| g.elements().map(move |x| (a, x)))
                .map(|(a, x)| g.mul(act.apply(a, x), g.inv(x)))
                .collect()
        }
    };
    let mut gens = gens;
    gens.sort_unstable();
    gens.dedup();
    Ok(Subgroup::normal_closure(g.clone(), &gens))
}
