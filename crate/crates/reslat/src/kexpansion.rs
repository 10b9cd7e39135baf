//! Twist-products K(A), negative cones, K-lattice recognition, and the
//! admissible-subalgebra constructions.
//!
//! The twist-product of an integral algebra lives on `A x A` with
//!
//! ```text
//! (a,b) \/ (c,d) = (a \/ c, b /\ d)        (a,b) /\ (c,d) = (a /\ c, b \/ d)
//! (a,b) * (c,d)  = (ac, (a -> d) /\ (c -> b))
//! (a,b) -> (c,d) = ((a -> c) /\ (d -> b), ad)
//! ```
//!
//! Pairs are flattened as `index = a * |A| + b`, and the decoding is kept
//! on [`KAlgebra`] because admissibility arguments need coordinates.

use crate::algebra::FiniteAlgebra;
use crate::constructors::{godel_chain, ordinal_sum_with_maps, two, wajsberg_chain};
use crate::subalgebras::{self, SubUniverse};
use crate::{Error, Result};

/// A twist-product together with its base algebra and pair decoding.
#[derive(Clone, Debug)]
pub struct KAlgebra {
    algebra: FiniteAlgebra,
    base: FiniteAlgebra,
}

impl KAlgebra {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn base(&self) -> &FiniteAlgebra {
        &self.base
    }

    pub fn into_algebra(self) -> FiniteAlgebra {
        self.algebra
    }

    pub fn pair_of(&self, i: usize) -> (usize, usize) {
        (i / self.base.size(), i % self.base.size())
    }

    pub fn index_of(&self, a: usize, b: usize) -> usize {
        a * self.base.size() + b
    }

    /// Indices of the negative cone `base x {1}`.
    pub fn cone_indices(&self) -> Vec<usize> {
        self.base.elements().map(|a| self.index_of(a, self.base.one())).collect()
    }
}

/// Builds the twist-product of a validated integral algebra.
pub fn k_expand(base: &FiniteAlgebra) -> Result<KAlgebra> {
    if !base.is_integral() {
        return Err(Error::Precondition("k_expand needs an integral algebra".into()));
    }
    let n = base.size();
    let size = n * n;
    let idx = |a: usize, b: usize| a * n + b;
    let mut join = vec![0; size * size];
    let mut meet = vec![0; size * size];
    let mut mult = vec![0; size * size];
    let mut imp = vec![0; size * size];
    for a in 0..n {
        for b in 0..n {
            let u = idx(a, b);
            for c in 0..n {
                for d in 0..n {
                    let v = idx(c, d);
                    join[u * size + v] = idx(base.join(a, c), base.meet(b, d));
                    meet[u * size + v] = idx(base.meet(a, c), base.join(b, d));
                    mult[u * size + v] =
                        idx(base.mult(a, c), base.meet(base.imp(a, d), base.imp(c, b)));
                    imp[u * size + v] =
                        idx(base.meet(base.imp(a, c), base.imp(d, b)), base.mult(a, d));
                }
            }
        }
    }
    let one = idx(base.one(), base.one());
    let labels = (0..size)
        .map(|i| format!("({},{})", base.label(i / n), base.label(i % n)))
        .collect();
    let algebra =
        FiniteAlgebra::from_tables(size, join, meet, mult, imp, one, None, Some(labels))?
            .validated()?;
    let k = KAlgebra { algebra, base: base.clone() };
    debug_assert!(is_k_lattice(&k.algebra));
    Ok(k)
}

/// The negative cone `{a : a <= 1}` with implication truncated by `/\ 1`,
/// plus the indices the cone occupies in the parent.
pub fn negative_cone_with_map(a: &FiniteAlgebra) -> (FiniteAlgebra, Vec<usize>) {
    let elems: Vec<usize> = a.elements().filter(|&x| a.leq(x, a.one())).collect();
    let pos = |x: usize| elems.binary_search(&x).expect("cone is closed");
    let m = elems.len();
    let mut join = vec![0; m * m];
    let mut meet = vec![0; m * m];
    let mut mult = vec![0; m * m];
    let mut imp = vec![0; m * m];
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            join[i * m + j] = pos(a.join(x, y));
            meet[i * m + j] = pos(a.meet(x, y));
            mult[i * m + j] = pos(a.mult(x, y));
            imp[i * m + j] = pos(a.imp1(x, y));
        }
    }
    let one = pos(a.one());
    let labels = elems.iter().map(|&x| a.label(x)).collect();
    let cone = FiniteAlgebra::from_tables(m, join, meet, mult, imp, one, a.zero().map(pos), Some(labels))
        .expect("cone tables are well formed")
        .validated()
        .expect("the negative cone of a residuated lattice is residuated");
    (cone, elems)
}

pub fn negative_cone(a: &FiniteAlgebra) -> FiniteAlgebra {
    negative_cone_with_map(a).0
}

/// 1-involutive, 1-distributive, and satisfies the two twist-product
/// equations; together with the residuated lattice axioms this
/// characterizes the subalgebras of twist-products.
pub fn is_k_lattice(a: &FiniteAlgebra) -> bool {
    let one = a.one();
    // ~~b = b
    if !a.elements().all(|b| a.imp(a.imp(b, one), one) == b) {
        return false;
    }
    // both distributive laws whenever one argument is 1
    let distrib = |x: usize, y: usize, z: usize| {
        a.meet(x, a.join(y, z)) == a.join(a.meet(x, y), a.meet(x, z))
            && a.join(x, a.meet(y, z)) == a.meet(a.join(x, y), a.join(x, z))
    };
    for x in a.elements() {
        for y in a.elements() {
            if !distrib(one, x, y) || !distrib(x, one, y) || !distrib(x, y, one) {
                return false;
            }
        }
    }
    // (K1): xy /\ 1 = (x /\ 1)(y /\ 1)
    // (K2): ((x /\ 1) -> y) /\ ((~y /\ 1) -> ~x) = x -> y
    for x in a.elements() {
        for y in a.elements() {
            if a.meet(a.mult(x, y), one) != a.mult(a.meet(x, one), a.meet(y, one)) {
                return false;
            }
            let lhs = a.meet(
                a.imp(a.meet(x, one), y),
                a.imp(a.meet(a.neg(y), one), a.neg(x)),
            );
            if lhs != a.imp(x, y) {
                return false;
            }
        }
    }
    true
}

/// The embedding `a -> (a /\ 1, ~a /\ 1)` of a K-lattice into the
/// twist-product of its negative cone. Returns the target and the image
/// of each element.
pub fn canonical_embedding(a: &FiniteAlgebra) -> Result<(KAlgebra, Vec<usize>)> {
    if !is_k_lattice(a) {
        return Err(Error::Precondition("canonical_embedding needs a K-lattice".into()));
    }
    let (cone, cone_elems) = negative_cone_with_map(a);
    let k = k_expand(&cone)?;
    let pos = |x: usize| cone_elems.binary_search(&x).expect("cone element");
    let map: Vec<usize> = a
        .elements()
        .map(|x| k.index_of(pos(a.meet(x, a.one())), pos(a.meet(a.neg(x), a.one()))))
        .collect();
    // injectivity
    let mut seen = vec![false; k.algebra().size()];
    for &m in &map {
        if seen[m] {
            return Err(Error::Invalid("canonical embedding is not injective".into()));
        }
        seen[m] = true;
    }
    // homomorphism
    let t = k.algebra();
    for x in a.elements() {
        for y in a.elements() {
            if map[a.join(x, y)] != t.join(map[x], map[y])
                || map[a.meet(x, y)] != t.meet(map[x], map[y])
                || map[a.mult(x, y)] != t.mult(map[x], map[y])
                || map[a.imp(x, y)] != t.imp(map[x], map[y])
            {
                return Err(Error::Invalid("canonical embedding does not preserve operations".into()));
            }
        }
    }
    if map[a.one()] != t.one() {
        return Err(Error::Invalid("canonical embedding moves the unit".into()));
    }
    Ok((k, map))
}

/// True iff bottom exists and `(b -> 0) -> 0 = b` for every `b`.
pub fn is_involutive(a: &FiniteAlgebra) -> bool {
    match a.bottom() {
        Some(zero) => a.elements().all(|b| a.imp(a.imp(b, zero), zero) == b),
        None => false,
    }
}

/// `a (+) b := (a -> 0) -> b` in a bounded involutive algebra.
pub fn circle_plus(a: &FiniteAlgebra, x: usize, y: usize) -> Result<usize> {
    if !is_involutive(a) {
        return Err(Error::Precondition("circle_plus needs a 0-involutive algebra".into()));
    }
    let zero = a.bottom().expect("involutive implies bounded");
    Ok(a.imp(a.imp(x, zero), y))
}

fn check_lattice_filter(a: &FiniteAlgebra, filter: &[usize]) -> Result<()> {
    let inside = |x: usize| filter.binary_search(&x).is_ok();
    if filter.is_empty() {
        return Err(Error::Precondition("a lattice filter is nonempty".into()));
    }
    for &x in filter {
        for y in a.elements() {
            if a.leq(x, y) && !inside(y) {
                return Err(Error::Precondition("filter is not upward closed".into()));
            }
        }
        for &y in filter {
            if !inside(a.meet(x, y)) {
                return Err(Error::Precondition("filter is not closed under meet".into()));
            }
        }
    }
    Ok(())
}

/// `K(B, F) = {(a,b) : a (+) b in F}`, the admissible subalgebra of the
/// twist-product of an involutive algebra carved out by a lattice filter.
pub fn admissible_from_filter(base: &FiniteAlgebra, filter: &[usize]) -> Result<(KAlgebra, SubUniverse)> {
    if !is_involutive(base) {
        return Err(Error::Precondition("admissible_from_filter needs an involutive base".into()));
    }
    check_lattice_filter(base, filter)?;
    let k = k_expand(base)?;
    let mut elems = Vec::new();
    for a in base.elements() {
        for b in base.elements() {
            if filter.binary_search(&circle_plus(base, a, b)?).is_ok() {
                elems.push(k.index_of(a, b));
            }
        }
    }
    elems.sort_unstable();
    if !subalgebras::is_subuniverse(k.algebra(), &elems) {
        return Err(Error::Invalid("filter did not produce a subuniverse".into()));
    }
    let mut s = SubUniverse::new(elems);
    if !subalgebras::is_admissible(&k, &s) {
        return Err(Error::Invalid("filter did not produce an admissible subuniverse".into()));
    }
    s.admissible = Some(true);
    Ok((k, s))
}

/// Recovers the lattice filter of the negative cone that carves a
/// K-lattice with involutive cone out of the cone's twist-product:
/// `F = {((a /\ 1) ->1 0) ->1 (~a /\ 1) : a in A}`.
///
/// The result is verified by rebuilding `K(A^-, F)` and comparing it with
/// the image of the canonical embedding.
pub fn recover_filter(a: &FiniteAlgebra) -> Result<Vec<usize>> {
    let (cone, cone_elems) = negative_cone_with_map(a);
    if !is_involutive(&cone) {
        return Err(Error::Precondition("recover_filter needs an involutive negative cone".into()));
    }
    let zero_in_a = cone_elems[cone.bottom().expect("involutive implies bounded")];
    let one = a.one();
    let mut filter: Vec<usize> = a
        .elements()
        .map(|x| {
            let ax = a.meet(x, one);
            let nx = a.meet(a.neg(x), one);
            let v = a.imp1(a.imp1(ax, zero_in_a), nx);
            cone_elems.binary_search(&v).expect("value lies in the cone")
        })
        .collect();
    filter.sort_unstable();
    filter.dedup();
    check_lattice_filter(&cone, &filter)?;
    // roundtrip: K(cone, F) must be exactly the embedded copy of A
    let (k, s) = admissible_from_filter(&cone, &filter)?;
    let (k2, image) = canonical_embedding(a)?;
    debug_assert_eq!(k.algebra().size(), k2.algebra().size());
    let mut image = image;
    image.sort_unstable();
    if s.elements != image {
        return Err(Error::Invalid("recovered filter does not reproduce the algebra".into()));
    }
    Ok(filter)
}

/// Dense elements `a \/ (a -> b)` of a Brouwerian (idempotent) algebra.
pub fn dense_elements(b: &FiniteAlgebra) -> Result<Vec<usize>> {
    check_brouwerian(b)?;
    let mut out: Vec<usize> = b
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| b.join(x, b.imp(x, y)))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn check_brouwerian(b: &FiniteAlgebra) -> Result<()> {
    let idem = b
        .elements()
        .all(|x| b.elements().all(|y| b.mult(x, y) == b.meet(x, y)));
    if !idem {
        return Err(Error::Precondition("expected a Brouwerian algebra (mult = meet)".into()));
    }
    Ok(())
}

/// A filter is regular iff it contains every dense element.
pub fn is_regular_filter(b: &FiniteAlgebra, filter: &[usize]) -> Result<bool> {
    check_brouwerian(b)?;
    check_lattice_filter(b, filter)?;
    Ok(dense_elements(b)?.iter().all(|d| filter.binary_search(d).is_ok()))
}

/// `K(B, F) = {(a,b) : a \/ b in F}` for a regular filter of a Brouwerian
/// algebra; the unique admissible subalgebra of `K(B)` per such filter.
pub fn admissible_brouwerian(base: &FiniteAlgebra, filter: &[usize]) -> Result<(KAlgebra, SubUniverse)> {
    if !is_regular_filter(base, filter)? {
        return Err(Error::Precondition("filter is not regular".into()));
    }
    let k = k_expand(base)?;
    let mut elems = Vec::new();
    for a in base.elements() {
        for b in base.elements() {
            if filter.binary_search(&base.join(a, b)).is_ok() {
                elems.push(k.index_of(a, b));
            }
        }
    }
    elems.sort_unstable();
    if !subalgebras::is_subuniverse(k.algebra(), &elems) {
        return Err(Error::Invalid("regular filter did not produce a subuniverse".into()));
    }
    let mut s = SubUniverse::new(elems);
    if !subalgebras::is_admissible(&k, &s) {
        return Err(Error::Invalid("regular filter did not produce an admissible subuniverse".into()));
    }
    s.admissible = Some(true);
    // negative cone of the carved algebra is the base itself
    let alg = s.algebra(k.algebra())?;
    let cone = negative_cone(&alg);
    if subalgebras::is_isomorphic(&cone, base).is_none() {
        return Err(Error::Invalid("carved algebra has the wrong negative cone".into()));
    }
    Ok((k, s))
}

/// Lifts an admissible subalgebra `S <= K(A)` over an ordinal sum:
/// `T = S u (A x B) u (B x A) u (B x B)` inside `K(A + B)`.
pub fn lift_over_sum(
    k_of_a: &KAlgebra,
    s: &SubUniverse,
    b: &FiniteAlgebra,
) -> Result<(KAlgebra, SubUniverse)> {
    if !subalgebras::is_admissible(k_of_a, s) {
        return Err(Error::Precondition("lift_over_sum needs an admissible subalgebra".into()));
    }
    let a = k_of_a.base();
    let sum = ordinal_sum_with_maps(a, b)?;
    let k_sum = k_expand(&sum.algebra)?;
    let in_a: Vec<usize> = a.elements().map(|x| sum.left[x]).collect();
    let in_b: Vec<usize> = b.elements().map(|x| sum.right[x]).collect();
    let mut elems: Vec<usize> = Vec::new();
    for &i in &s.elements {
        let (x, y) = k_of_a.pair_of(i);
        elems.push(k_sum.index_of(sum.left[x], sum.left[y]));
    }
    for &x in &in_a {
        for &y in &in_b {
            elems.push(k_sum.index_of(x, y));
            elems.push(k_sum.index_of(y, x));
        }
    }
    for &x in &in_b {
        for &y in &in_b {
            elems.push(k_sum.index_of(x, y));
        }
    }
    elems.sort_unstable();
    elems.dedup();
    if !subalgebras::is_subuniverse(k_sum.algebra(), &elems) {
        return Err(Error::Invalid("lift is not a subuniverse".into()));
    }
    let mut t = SubUniverse::new(elems);
    if !subalgebras::is_admissible(&k_sum, &t) {
        return Err(Error::Invalid("lift is not admissible".into()));
    }
    t.admissible = Some(true);
    // restriction back to A x A recovers S
    let back: Vec<usize> = t
        .elements
        .iter()
        .copied()
        .filter(|&i| {
            let (x, y) = k_sum.pair_of(i);
            in_a.contains(&x) && in_a.contains(&y)
        })
        .collect();
    let mut expected: Vec<usize> = s
        .elements
        .iter()
        .map(|&i| {
            let (x, y) = k_of_a.pair_of(i);
            k_sum.index_of(sum.left[x], sum.left[y])
        })
        .collect();
    expected.sort_unstable();
    if back != expected {
        return Err(Error::Invalid("lift does not restrict back to the original subalgebra".into()));
    }
    Ok((k_sum, t))
}

/// `A x A \ {(0,0)}` as an admissible subalgebra of `K(A)`, defined when
/// the bottom of `A` is meet-irreducible.
pub fn punctured(base: &FiniteAlgebra) -> Result<(KAlgebra, SubUniverse)> {
    let zero = base
        .bottom()
        .ok_or_else(|| Error::Precondition("punctured needs a bounded algebra".into()))?;
    for a in base.elements() {
        for b in base.elements() {
            if base.meet(a, b) == zero && a != zero && b != zero {
                return Err(Error::Precondition(format!(
                    "bottom is meet-reducible: {} /\\ {} = 0",
                    base.label(a),
                    base.label(b)
                )));
            }
        }
    }
    let k = k_expand(base)?;
    let removed = k.index_of(zero, zero);
    let elems: Vec<usize> = (0..k.algebra().size()).filter(|&i| i != removed).collect();
    if !subalgebras::is_subuniverse(k.algebra(), &elems) {
        return Err(Error::Invalid("punctured square is not a subuniverse".into()));
    }
    let mut s = SubUniverse::new(elems);
    s.admissible = Some(true);
    Ok((k, s))
}

/// The named K-lattices: `K3`, `K4`, `K_{r,p}`, `K_{n^2}`, `K_{n^2-1}`
/// and `K8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedKLattice {
    K3,
    K4,
    /// Admissible subalgebra of the twist-product of the Wajsberg chain
    /// Ł_p carved by the principal filter of `a^r`.
    Krp { r: usize, p: usize },
    /// The full twist-product of the n-element idempotent chain.
    KnSquared { n: usize },
    /// The same square with the bottom pair removed.
    KnSquaredMinusOne { n: usize },
    K8,
}

pub fn named(which: NamedKLattice) -> Result<FiniteAlgebra> {
    match which {
        NamedKLattice::K3 => {
            let b = two()?;
            let one = b.one();
            let (k, s) = admissible_from_filter(&b, &[one])?;
            // cross-check against the punctured square
            let (_, p) = punctured(&b)?;
            debug_assert_eq!(s.elements, p.elements);
            s.algebra(k.algebra())
        }
        NamedKLattice::K4 => Ok(k_expand(&two()?)?.into_algebra()),
        NamedKLattice::Krp { r, p } => {
            if p < 1 || r > p {
                return Err(Error::Precondition(format!("K_{{r,p}} needs r <= p and p >= 1, got r={r}, p={p}")));
            }
            let chain = wajsberg_chain(p)?;
            // the principal filter of a^r is the top r+1 elements
            let filter: Vec<usize> = (p - r..=p).collect();
            let (k, s) = admissible_from_filter(&chain, &filter)?;
            s.algebra(k.algebra())
        }
        NamedKLattice::KnSquared { n } => Ok(k_expand(&godel_chain(n)?)?.into_algebra()),
        NamedKLattice::KnSquaredMinusOne { n } => {
            let (k, s) = punctured(&godel_chain(n)?)?;
            s.algebra(k.algebra())
        }
        NamedKLattice::K8 => named(NamedKLattice::KnSquaredMinusOne { n: 3 }),
    }
}

/// `|K_{r,p}|` in closed form, used to cross-check constructions.
pub fn krp_size(r: usize, p: usize) -> usize {
    (p + 1) * (p + 1) - (p - r) * (p - r + 1) / 2
}

/// All lattice orders on `n` elements, up to isomorphism, as `leq`
/// matrices. Exhaustive over the relation bits, so capped at `n <= 5`.
pub fn all_lattice_orders(n: usize) -> Result<Vec<Vec<bool>>> {
    if n == 0 || n > 5 {
        return Err(Error::CapExceeded(format!("lattice enumeration needs 1 <= n <= 5, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let bits = pairs.len();
    let mut found: Vec<Vec<bool>> = Vec::new();
    'mask: for mask in 0u64..(1 << bits) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << b) != 0 {
                leq[i * n + j] = true;
            }
        }
        // partial order
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    continue 'mask;
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        continue 'mask;
                    }
                }
            }
        }
        // lattice: every pair has a least upper and a greatest lower bound
        for i in 0..n {
            for j in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&u| leq[i * n + u] && leq[j * n + u]).collect();
                if !ub.iter().any(|&u| ub.iter().all(|&v| leq[u * n + v])) {
                    continue 'mask;
                }
                let lb: Vec<usize> = (0..n).filter(|&l| leq[l * n + i] && leq[l * n + j]).collect();
                if !lb.iter().any(|&l| lb.iter().all(|&v| leq[v * n + l])) {
                    continue 'mask;
                }
            }
        }
        // dedup up to order isomorphism
        let iso_to_known = found.iter().any(|known| {
            let mut perm: Vec<usize> = (0..n).collect();
            permutations(&mut perm, 0, &mut |p| {
                (0..n).all(|i| (0..n).all(|j| leq[i * n + j] == known[p[i] * n + p[j]]))
            })
        });
        if !iso_to_known {
            found.push(leq);
        }
    }
    Ok(found)
}

fn permutations(perm: &mut Vec<usize>, at: usize, test: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if at == perm.len() {
        return test(perm);
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        if permutations(perm, at + 1, test) {
            perm.swap(at, i);
            return true;
        }
        perm.swap(at, i);
    }
    false
}

/// Exhaustive search for every K-lattice on `n` elements, up to
/// isomorphism: all lattice reducts up to isomorphism, all unit choices,
/// all commutative multiplications with that unit, keeping the tables
/// that are associative, residuated, and pass the K-lattice recognizer.
pub fn enumerate_k_lattices(n: usize) -> Result<Vec<FiniteAlgebra>> {
    let mut out: Vec<FiniteAlgebra> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for leq in all_lattice_orders(n)? {
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                join[i * n + j] = (0..n)
                    .find(|&u| {
                        leq[i * n + u]
                            && leq[j * n + u]
                            && (0..n).all(|v| !(leq[i * n + v] && leq[j * n + v]) || leq[u * n + v])
                    })
                    .expect("lattice order has joins");
                meet[i * n + j] = (0..n)
                    .find(|&l| {
                        leq[l * n + i]
                            && leq[l * n + j]
                            && (0..n).all(|v| !(leq[v * n + i] && leq[v * n + j]) || leq[v * n + l])
                    })
                    .expect("lattice order has meets");
            }
        }
        for one in 0..n {
            // free positions: unordered pairs of non-unit elements
            let free: Vec<(usize, usize)> = (0..n)
                .filter(|&i| i != one)
                .flat_map(|i| (i..n).filter(|&j| j != one).map(move |j| (i, j)))
                .collect();
            let mut choice = vec![0usize; free.len()];
            loop {
                // assemble the commutative table
                let mut mult = vec![0usize; n * n];
                for x in 0..n {
                    mult[one * n + x] = x;
                    mult[x * n + one] = x;
                }
                for (k, &(i, j)) in free.iter().enumerate() {
                    mult[i * n + j] = choice[k];
                    mult[j * n + i] = choice[k];
                }
                if let Some(alg) = try_assemble(n, &leq, &join, &meet, &mult, one) {
                    let key = crate::subalgebras::canonical_key(&alg);
                    if seen.insert(key) {
                        out.push(crate::subalgebras::canonical_form(&alg));
                    }
                }
                // odometer over the free entries
                let mut k = free.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    choice[k] += 1;
                    if choice[k] < n {
                        break;
                    }
                    choice[k] = 0;
                }
                if choice.iter().all(|&c| c == 0) {
                    break;
                }
            }
        }
    }
    out.sort_by_key(|a| a.size());
    Ok(out)
}

fn try_assemble(
    n: usize,
    leq: &[bool],
    join: &[usize],
    meet: &[usize],
    mult: &[usize],
    one: usize,
) -> Option<FiniteAlgebra> {
    // associativity
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if mult[mult[x * n + y] * n + z] != mult[x * n + mult[y * n + z]] {
                    return None;
                }
            }
        }
    }
    // residuals: the set {c : x*c <= y} must have a greatest element
    let mut imp = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            let sat: Vec<usize> = (0..n).filter(|&c| leq[mult[x * n + c] * n + y]).collect();
            let top = sat.first().map(|&f| sat.iter().fold(f, |acc, &c| join[acc * n + c]))?;
            if !leq[mult[x * n + top] * n + y] || !sat.contains(&top) {
                return None;
            }
            imp[x * n + y] = top;
        }
    }
    let alg = FiniteAlgebra::from_tables(
        n,
        join.to_vec(),
        meet.to_vec(),
        mult.to_vec(),
        imp,
        one,
        None,
        None,
    )
    .ok()?;
    if !alg.validate().passed() || !is_k_lattice(&alg) {
        return None;
    }
    Some(alg)
}
