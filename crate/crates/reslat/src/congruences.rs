//! Filters, congruences, congruence lattices, quotients, and the
//! simplicity / subdirect-irreducibility predicates.
//!
//! Congruences are ideal-determined here: a congruence is recovered from
//! its 1-class as `theta_X = {(a,b) : (a->b) /\ 1 in X and (b->a) /\ 1 in X}`.
//! For integral algebras the 1-classes range over the multiplicative
//! filters; in general they range over the convex subalgebras. This is
//! exponentially cheaper than raw partition search; a slow partition
//! oracle is kept for cross-checking small cases.

use crate::algebra::FiniteAlgebra;
use crate::subalgebras;
use crate::{Error, Result};

/// A compatible partition of the universe.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Congruence {
    /// `block_of[x]` is the block index of `x`; blocks are numbered by
    /// their least element, in order.
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Congruence {
    /// Normalizes an arbitrary block-index vector.
    fn from_raw(raw: &[usize]) -> Congruence {
        let n = raw.len();
        let mut rename: Vec<Option<usize>> = vec![None; n];
        let mut block_of = vec![0usize; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = raw[x];
            let b = match rename[r] {
                Some(b) => b,
                None => {
                    blocks.push(Vec::new());
                    rename[r] = Some(blocks.len() - 1);
                    blocks.len() - 1
                }
            };
            block_of[x] = b;
            blocks[b].push(x);
        }
        Congruence { block_of, blocks }
    }

    pub fn identity(n: usize) -> Congruence {
        Congruence::from_raw(&(0..n).collect::<Vec<_>>())
    }

    pub fn total(n: usize) -> Congruence {
        Congruence::from_raw(&vec![0; n])
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.len() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Refinement order: `self <= other` iff every block of `self` sits
    /// inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| other.block_of[x] == other.block_of[b[0]]))
    }

    /// True iff each operation descends to blocks.
    pub fn is_compatible(&self, a: &FiniteAlgebra) -> bool {
        let n = a.size();
        for x in 0..n {
            for y in 0..n {
                if !self.related(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !(self.related(a.join(x, z), a.join(y, z))
                        && self.related(a.meet(x, z), a.meet(y, z))
                        && self.related(a.mult(x, z), a.mult(y, z))
                        && self.related(a.imp(x, z), a.imp(y, z))
                        && self.related(a.imp(z, x), a.imp(z, y)))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Kinds of filters used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FilterKind {
    /// Contains 1, upward closed, closed under multiplication.
    Congruence,
    /// Nonempty, upward closed, closed under meet.
    Lattice,
}

/// A filter of a given kind, as a sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Filter {
    pub elements: Vec<usize>,
    pub kind: FilterKind,
}

fn upward_closed(a: &FiniteAlgebra, set: &[usize]) -> bool {
    set.iter().all(|&x| {
        a.elements().all(|y| !a.leq(x, y) || set.binary_search(&y).is_ok())
    })
}

/// All congruence filters (1-classes) of an integral algebra.
pub fn congruence_filters(a: &FiniteAlgebra) -> Result<Vec<Filter>> {
    if !a.is_integral() {
        return Err(Error::Precondition("congruence_filters needs an integral algebra".into()));
    }
    let n = a.size();
    if n > 20 {
        return Err(Error::CapExceeded(format!("filter enumeration needs |A| <= 20, got {n}")));
    }
    let one = a.one();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << one) == 0 {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if !upward_closed(a, &set) {
            continue;
        }
        let closed = set
            .iter()
            .all(|&x| set.iter().all(|&y| set.binary_search(&a.mult(x, y)).is_ok()));
        if closed {
            out.push(Filter { elements: set, kind: FilterKind::Congruence });
        }
    }
    Ok(out)
}

/// All lattice filters (nonempty up-sets closed under meet).
pub fn lattice_filters(a: &FiniteAlgebra) -> Result<Vec<Filter>> {
    let n = a.size();
    if n > 20 {
        return Err(Error::CapExceeded(format!("filter enumeration needs |A| <= 20, got {n}")));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if !upward_closed(a, &set) {
            continue;
        }
        let closed = set
            .iter()
            .all(|&x| set.iter().all(|&y| set.binary_search(&a.meet(x, y)).is_ok()));
        if closed {
            out.push(Filter { elements: set, kind: FilterKind::Lattice });
        }
    }
    Ok(out)
}

/// The congruence `theta_X` induced by a congruence filter `X` (for
/// integral algebras) or by a convex subalgebra (in general).
pub fn theta_from_filter(a: &FiniteAlgebra, filter: &[usize]) -> Result<Congruence> {
    let inside = |v: usize| filter.binary_search(&v).is_ok();
    if !inside(a.one()) {
        return Err(Error::Precondition("filter must contain 1".into()));
    }
    if a.is_integral() {
        if !upward_closed(a, filter) {
            return Err(Error::Precondition("filter is not upward closed".into()));
        }
        let mult_closed = filter
            .iter()
            .all(|&x| filter.iter().all(|&y| inside(a.mult(x, y))));
        if !mult_closed {
            return Err(Error::Precondition("filter is not closed under mult".into()));
        }
    } else if !subalgebras::is_subuniverse(&a.without_zero(), filter) || !is_convex(a, filter) {
        return Err(Error::Precondition("1-class must be a convex subalgebra".into()));
    }
    let n = a.size();
    // union-find over the displayed relation
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != c {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for x in 0..n {
        for y in x + 1..n {
            if inside(a.imp1(x, y)) && inside(a.imp1(y, x)) {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
    }
    let raw: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let theta = Congruence::from_raw(&raw);
    // the displayed relation must itself be transitive and compatible
    for x in 0..n {
        for y in 0..n {
            let related = inside(a.imp1(x, y)) && inside(a.imp1(y, x));
            if related != theta.related(x, y) {
                return Err(Error::Invalid("filter relation is not transitive".into()));
            }
        }
    }
    if !theta.is_compatible(a) {
        return Err(Error::Invalid("filter relation is not compatible".into()));
    }
    Ok(theta)
}

/// All congruences. Integral algebras go through congruence filters; the
/// general case goes through convex subalgebras (their 1-classes).
pub fn all_congruences(a: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    let mut out: Vec<Congruence> = Vec::new();
    if a.is_integral() {
        for f in congruence_filters(a)? {
            out.push(theta_from_filter(a, &f.elements)?);
        }
    } else {
        // 1-classes are convex subalgebras; they need not contain the 0
        // constant, so enumerate subuniverses of the zero-free reduct
        for s in subalgebras::subuniverses_above(&a.without_zero(), &[]) {
            if !is_convex(a, &s.elements) {
                continue;
            }
            if let Ok(theta) = theta_from_filter(a, &s.elements) {
                if !out.contains(&theta) {
                    out.push(theta);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn is_convex(a: &FiniteAlgebra, set: &[usize]) -> bool {
    set.iter().all(|&lo| {
        set.iter().all(|&hi| {
            a.elements().all(|z| {
                !(a.leq(lo, z) && a.leq(z, hi)) || set.binary_search(&z).is_ok()
            })
        })
    })
}

/// The congruence lattice, ordered by refinement.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    pub congruences: Vec<Congruence>,
    /// `leq[i][j]` iff congruence `i` refines congruence `j`.
    pub leq: Vec<Vec<bool>>,
}

impl CongruenceLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    /// Indices of the atoms: minimal non-identity congruences.
    pub fn atoms(&self) -> Vec<usize> {
        let id = self
            .congruences
            .iter()
            .position(|c| c.is_identity())
            .expect("identity congruence is always present");
        (0..self.len())
            .filter(|&i| i != id && self.leq[id][i])
            .filter(|&i| {
                (0..self.len())
                    .all(|j| j == i || j == id || !(self.leq[j][i] && self.leq[id][j]))
            })
            .collect()
    }

    /// Poset-isomorphism check against another congruence lattice, by
    /// backtracking on block-size profiles.
    pub fn isomorphic_to(&self, other: &CongruenceLattice) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let n = self.len();
        let profile = |lat: &CongruenceLattice, i: usize| {
            let below = (0..n).filter(|&j| lat.leq[j][i]).count();
            let above = (0..n).filter(|&j| lat.leq[i][j]).count();
            (below, above)
        };
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn bt(
            a: &CongruenceLattice,
            b: &CongruenceLattice,
            at: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            profile: &dyn Fn(&CongruenceLattice, usize) -> (usize, usize),
        ) -> bool {
            let n = a.len();
            if at == n {
                return true;
            }
            for y in 0..n {
                if used[y] || profile(a, at) != profile(b, y) {
                    continue;
                }
                let ok = (0..at).all(|x2| {
                    a.leq[at][x2] == b.leq[y][map[x2]] && a.leq[x2][at] == b.leq[map[x2]][y]
                });
                if !ok {
                    continue;
                }
                map[at] = y;
                used[y] = true;
                if bt(a, b, at + 1, map, used, profile) {
                    return true;
                }
                map[at] = usize::MAX;
                used[y] = false;
            }
            false
        }
        bt(self, other, 0, &mut map, &mut used, &profile)
    }
}

pub fn congruence_lattice(a: &FiniteAlgebra) -> Result<CongruenceLattice> {
    let congruences = all_congruences(a)?;
    let n = congruences.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = congruences[i].refines(&congruences[j]);
        }
    }
    Ok(CongruenceLattice { congruences, leq })
}

/// Block algebra of a compatible partition.
pub fn quotient(a: &FiniteAlgebra, theta: &Congruence) -> Result<FiniteAlgebra> {
    if theta.size() != a.size() {
        return Err(Error::Precondition("partition size mismatch".into()));
    }
    if !theta.is_compatible(a) {
        return Err(Error::Precondition("partition is not compatible".into()));
    }
    let m = theta.blocks().len();
    let rep = |b: usize| theta.blocks()[b][0];
    let mut join = vec![0; m * m];
    let mut meet = vec![0; m * m];
    let mut mult = vec![0; m * m];
    let mut imp = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            join[i * m + j] = theta.block_of(a.join(rep(i), rep(j)));
            meet[i * m + j] = theta.block_of(a.meet(rep(i), rep(j)));
            mult[i * m + j] = theta.block_of(a.mult(rep(i), rep(j)));
            imp[i * m + j] = theta.block_of(a.imp(rep(i), rep(j)));
        }
    }
    let labels = (0..m).map(|b| a.label(rep(b))).collect();
    FiniteAlgebra::from_tables(
        m,
        join,
        meet,
        mult,
        imp,
        theta.block_of(a.one()),
        a.zero().map(|z| theta.block_of(z)),
        Some(labels),
    )?
    .validated()
}

/// Exactly two congruences.
pub fn is_simple(a: &FiniteAlgebra) -> Result<bool> {
    Ok(all_congruences(a)?.len() == 2)
}

/// A unique atom in the congruence lattice.
pub fn is_subdirectly_irreducible(a: &FiniteAlgebra) -> Result<bool> {
    Ok(congruence_lattice(a)?.atoms().len() == 1)
}

/// Raw partition search; exponential, kept as an oracle for small sizes.
pub fn all_congruences_bruteforce(a: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    let n = a.size();
    if n > 6 {
        return Err(Error::CapExceeded(format!("partition oracle needs |A| <= 6, got {n}")));
    }
    // restricted growth strings enumerate set partitions
    let mut rgs = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let theta = Congruence::from_raw(&rgs);
        if theta.is_compatible(a) {
            out.push(theta);
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            i -= 1;
            let max_allowed = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
            if rgs[i] < max_allowed {
                rgs[i] += 1;
                for v in rgs.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                break;
            }
            rgs[i] = 0;
        }
    }
}
