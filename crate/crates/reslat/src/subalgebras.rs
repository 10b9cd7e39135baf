//! Subuniverse generation, exhaustive enumeration, isomorphism testing and
//! classification up to isomorphism.
//!
//! Isomorphism search and canonical labelling both lean on an iterated
//! invariant refinement (unit/bottom flags, idempotency, element order,
//! then rounds of neighbourhood hashing over all four tables). For the
//! desk-scale algebras handled here the refined classes are tiny, so the
//! backtracking stays cheap.

use std::collections::{BTreeSet, VecDeque};

use crate::algebra::{ElementOrder, FiniteAlgebra};
use crate::kexpansion::KAlgebra;
use crate::{Error, Result};

/// Default cap for exhaustive subuniverse enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Cap used for targeted admissible enumeration (largest desk case: 36).
pub const ADMISSIBLE_ENUMERATION_CAP: usize = 36;

/// A subset of an algebra's universe closed under all operations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubUniverse {
    pub elements: Vec<usize>,
    /// Meaningful when the parent is a K-expansion.
    pub admissible: Option<bool>,
}

impl SubUniverse {
    pub fn new(elements: Vec<usize>) -> Self {
        SubUniverse { elements, admissible: None }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn algebra(&self, parent: &FiniteAlgebra) -> Result<FiniteAlgebra> {
        parent.restrict(&self.elements)
    }
}

/// Least closed subset containing `seed`, the unit, and the zero constant
/// when it is part of the signature.
pub fn closure(a: &FiniteAlgebra, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; a.size()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let push = |x: usize, inside: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        if !inside[x] {
            inside[x] = true;
            queue.push_back(x);
        }
    };
    push(a.one(), &mut inside, &mut queue);
    if let Some(z) = a.zero() {
        push(z, &mut inside, &mut queue);
    }
    for &s in seed {
        push(s, &mut inside, &mut queue);
    }
    let mut members: Vec<usize> = Vec::new();
    while let Some(x) = queue.pop_front() {
        for &y in members.iter().chain(std::iter::once(&x)) {
            for v in [
                a.join(x, y),
                a.meet(x, y),
                a.mult(x, y),
                a.imp(x, y),
                a.imp(y, x),
            ] {
                push(v, &mut inside, &mut queue);
            }
        }
        members.push(x);
    }
    let mut out: Vec<usize> = inside
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    out.sort_unstable();
    out
}

/// The subuniverse generated by a seed set.
pub fn generated(a: &FiniteAlgebra, seed: &[usize]) -> SubUniverse {
    SubUniverse::new(closure(a, seed))
}

/// True iff `elems` (sorted) is closed under all four operations and
/// contains the constants.
pub fn is_subuniverse(a: &FiniteAlgebra, elems: &[usize]) -> bool {
    let inside = |x: usize| elems.binary_search(&x).is_ok();
    if !inside(a.one()) {
        return false;
    }
    if let Some(z) = a.zero() {
        if !inside(z) {
            return false;
        }
    }
    elems.iter().all(|&x| {
        elems.iter().all(|&y| {
            inside(a.join(x, y)) && inside(a.meet(x, y)) && inside(a.mult(x, y)) && inside(a.imp(x, y))
        })
    })
}

/// Every closed subset containing the constants, by closure-driven search.
/// Refuses algebras larger than `cap` to avoid accidental blowups.
pub fn all_subuniverses(a: &FiniteAlgebra, cap: usize) -> Result<Vec<SubUniverse>> {
    if a.size() > cap {
        return Err(Error::CapExceeded(format!(
            "subuniverse enumeration needs |A| <= {cap}, got {}",
            a.size()
        )));
    }
    Ok(subuniverses_above(a, &[]))
}

/// Every closed subset containing `base` (plus constants). The search
/// walks one-element extensions of already-closed sets, so its cost is
/// proportional to the number of subuniverses found.
pub fn subuniverses_above(a: &FiniteAlgebra, base: &[usize]) -> Vec<SubUniverse> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut work: Vec<Vec<usize>> = Vec::new();
    let start = closure(a, base);
    found.insert(start.clone());
    work.push(start);
    while let Some(s) = work.pop() {
        for x in a.elements() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(x);
            let t = closure(a, &seed);
            if found.insert(t.clone()) {
                work.push(t);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out.into_iter().map(SubUniverse::new).collect()
}

// ---------------------------------------------------------------------------
// invariants, isomorphism, canonical forms
// ---------------------------------------------------------------------------

fn mix(h: u64, v: u64) -> u64 {
    // FNV-style mixing; fixed keys keep runs deterministic
    (h ^ v).wrapping_mul(0x100_0000_01b3).rotate_left(17)
}

fn hash_slice(vs: &[u64]) -> u64 {
    vs.iter().fold(0xcbf2_9ce4_8422_2325, |h, &v| mix(h, v))
}

/// Stable per-element invariant labels, refined to a fixpoint.
fn refine_labels(a: &FiniteAlgebra, start: Option<Vec<u64>>) -> Vec<u64> {
    let n = a.size();
    let mut labels: Vec<u64> = match start {
        Some(l) => l,
        None => {
            let bottom = a.bottom();
            (0..n)
                .map(|x| {
                    let ord = match a.element_order(x) {
                        Ok(ElementOrder::Finite(k)) => k as u64,
                        _ => u64::MAX,
                    };
                    let upset = (0..n).filter(|&y| a.leq(x, y)).count() as u64;
                    hash_slice(&[
                        (x == a.one()) as u64,
                        (Some(x) == bottom) as u64,
                        a.is_idempotent(x) as u64,
                        a.is_join_irreducible(x) as u64,
                        ord,
                        upset,
                    ])
                })
                .collect()
        }
    };
    loop {
        let mut next: Vec<u64> = Vec::with_capacity(n);
        for x in 0..n {
            let mut row: Vec<u64> = (0..n)
                .map(|y| {
                    hash_slice(&[
                        labels[y],
                        labels[a.join(x, y)],
                        labels[a.meet(x, y)],
                        labels[a.mult(x, y)],
                        labels[a.imp(x, y)],
                        labels[a.imp(y, x)],
                    ])
                })
                .collect();
            row.sort_unstable();
            row.push(labels[x]);
            next.push(hash_slice(&row));
        }
        let classes = |ls: &[u64]| {
            let mut s: Vec<u64> = ls.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        if classes(&next) == classes(&labels) {
            return next;
        }
        labels = next;
    }
}

fn sorted_label_multiset(labels: &[u64]) -> Vec<u64> {
    let mut s = labels.to_vec();
    s.sort_unstable();
    s
}

/// Isomorphism witness search: a bijection preserving all tables and the
/// constants, or `None`.
pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size() != b.size() || (a.zero().is_some()) != (b.zero().is_some()) {
        return None;
    }
    let la = refine_labels(a, None);
    let lb = refine_labels(b, None);
    if sorted_label_multiset(&la) != sorted_label_multiset(&lb) {
        return None;
    }
    let n = a.size();
    // map elements of a in order of rarest invariant class first
    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |x: usize| la.iter().filter(|&&l| l == la[x]).count();
    order.sort_by_key(|&x| (class_size(x), la[x], x));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn bt(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        la: &[u64],
        lb: &[u64],
        order: &[usize],
        at: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if at == order.len() {
            return true;
        }
        let x = order[at];
        for y in 0..b.size() {
            if used[y] || la[x] != lb[y] {
                continue;
            }
            if (x == a.one()) != (y == b.one()) {
                continue;
            }
            let consistent = order[..at].iter().chain(std::iter::once(&x)).all(|&x2| {
                let y2 = if x2 == x { y } else { map[x2] };
                let check = |fa: usize, fb: usize| {
                    // verify only when both arguments are mapped
                    if map[fa] != usize::MAX {
                        map[fa] == fb
                    } else if fa == x {
                        fb == y
                    } else {
                        true
                    }
                };
                check(a.join(x, x2), b.join(y, y2))
                    && check(a.meet(x, x2), b.meet(y, y2))
                    && check(a.mult(x, x2), b.mult(y, y2))
                    && check(a.imp(x, x2), b.imp(y, y2))
                    && check(a.imp(x2, x), b.imp(y2, y))
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if bt(a, b, la, lb, order, at + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
    if bt(a, b, &la, &lb, &order, 0, &mut map, &mut used) {
        // full verification of the witness
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                map[a.join(x, y)] == b.join(map[x], map[y])
                    && map[a.meet(x, y)] == b.meet(map[x], map[y])
                    && map[a.mult(x, y)] == b.mult(map[x], map[y])
                    && map[a.imp(x, y)] == b.imp(map[x], map[y])
            })
        }) && map[a.one()] == b.one()
            && a.zero().map(|z| map[z]) == b.zero();
        if ok {
            return Some(map);
        }
    }
    None
}

/// Canonical table signature: the lexicographically least flattening of
/// the tables over all invariant-respecting relabellings.
pub fn canonical_key(a: &FiniteAlgebra) -> Vec<usize> {
    signature(&canonical_form(a))
}

/// The canonical representative of the isomorphism class of `a`.
pub fn canonical_form(a: &FiniteAlgebra) -> FiniteAlgebra {
    let labels = refine_labels(a, None);
    let mut best: Option<(Vec<usize>, FiniteAlgebra)> = None;
    canonical_search(a, labels, &mut best);
    best.expect("at least one labelling").1
}

fn signature(a: &FiniteAlgebra) -> Vec<usize> {
    let n = a.size();
    let mut sig = Vec::with_capacity(4 * n * n + 2);
    sig.push(a.one());
    sig.push(a.zero().map_or(usize::MAX, |z| z));
    for x in 0..n {
        for y in 0..n {
            sig.push(a.join(x, y));
            sig.push(a.meet(x, y));
            sig.push(a.mult(x, y));
            sig.push(a.imp(x, y));
        }
    }
    sig
}

fn canonical_search(a: &FiniteAlgebra, labels: Vec<u64>, best: &mut Option<(Vec<usize>, FiniteAlgebra)>) {
    let n = a.size();
    // group elements by label, order classes by (size, label)
    let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
    {
        let mut sorted: Vec<usize> = (0..n).collect();
        sorted.sort_by_key(|&x| (labels[x], x));
        for x in sorted {
            match classes.last_mut() {
                Some((l, v)) if *l == labels[x] => v.push(x),
                _ => classes.push((labels[x], vec![x])),
            }
        }
    }
    if let Some((_, members)) = classes.iter().find(|(_, v)| v.len() > 1) {
        // individualize each member of the first non-singleton class
        for &x in members {
            let mut l2 = labels.clone();
            l2[x] = mix(l2[x], 0x5eed);
            let refined = refine_labels(a, Some(l2));
            canonical_search(a, refined, best);
        }
        return;
    }
    // all classes singleton: the label order is a permutation
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| labels[x]);
    let mut perm = vec![0usize; n];
    for (pos, &x) in order.iter().enumerate() {
        perm[x] = pos;
    }
    let candidate = a.apply_permutation(&perm);
    let sig = signature(&candidate);
    match best {
        Some((b, _)) if *b <= sig => {}
        _ => *best = Some((sig, candidate)),
    }
}

/// Representatives of the isomorphism classes of all subuniverses.
pub fn subalgebras_up_to_iso(a: &FiniteAlgebra, cap: usize) -> Result<Vec<FiniteAlgebra>> {
    let subs = all_subuniverses(a, cap)?;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for s in subs {
        let alg = s.algebra(a)?;
        let key = canonical_key(&alg);
        if seen.insert(key) {
            out.push(canonical_form(&alg));
        }
    }
    out.sort_by_key(|x| (x.size(), signature(x)));
    Ok(out)
}

/// True iff `a` embeds into `b` (i.e. some subalgebra of `b` is
/// isomorphic to `a`).
pub fn embeds_into(a: &FiniteAlgebra, b: &FiniteAlgebra, cap: usize) -> Result<bool> {
    if a.size() > b.size() {
        return Ok(false);
    }
    for s in all_subuniverses(b, cap)? {
        if s.len() == a.size() && is_isomorphic(a, &s.algebra(b)?).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// admissibility and tightness
// ---------------------------------------------------------------------------

/// A subalgebra of a K-expansion is admissible iff it contains the whole
/// negative cone `base x {1}`.
pub fn is_admissible(k: &KAlgebra, s: &SubUniverse) -> bool {
    k.cone_indices().iter().all(|&i| s.contains(i))
}

/// The least admissible subalgebra: generated by `base x {1}`.
pub fn minimal_admissible(k: &KAlgebra) -> SubUniverse {
    let mut s = generated(k.algebra(), &k.cone_indices());
    s.admissible = Some(true);
    s
}

/// Every admissible subuniverse of a K-expansion.
pub fn admissible_subuniverses(k: &KAlgebra, cap: usize) -> Result<Vec<SubUniverse>> {
    if k.algebra().size() > cap {
        return Err(Error::CapExceeded(format!(
            "admissible enumeration needs |K(A)| <= {cap}, got {}",
            k.algebra().size()
        )));
    }
    let mut subs = subuniverses_above(k.algebra(), &k.cone_indices());
    for s in &mut subs {
        s.admissible = Some(true);
    }
    Ok(subs)
}

/// Tightness: more than two elements, bounded, and every element other
/// than bottom and 1 generates the whole algebra.
pub fn is_tight(a: &FiniteAlgebra) -> bool {
    if a.size() <= 2 {
        return false;
    }
    let Some(zero) = a.bottom() else {
        return false;
    };
    a.elements()
        .filter(|&x| x != zero && x != a.one())
        .all(|x| closure(a, &[x]).len() == a.size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{c5, direct_product, godel_chain, trivial, two, wajsberg_chain};
    use crate::kexpansion::k_expand;

    #[test]
    fn generated_of_empty_seed() {
        let g3 = godel_chain(3).unwrap();
        assert_eq!(generated(&g3, &[]).elements, vec![g3.one()]);
    }

    #[test]
    fn single_element_generates_wajsberg_4() {
        let l4 = wajsberg_chain(4).unwrap();
        let a = l4.size() - 2; // a^1
        assert_eq!(generated(&l4, &[a]).len(), l4.size());
    }

    #[test]
    fn subuniverses_of_k4() {
        let k4 = k_expand(&two().unwrap()).unwrap();
        let subs = all_subuniverses(k4.algebra(), 16).unwrap();
        // {1}, the three-element chain, and the whole algebra
        assert_eq!(subs.len(), 3);
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 3, 4]);
    }

    #[test]
    fn subuniverses_of_two() {
        let b = two().unwrap();
        assert_eq!(all_subuniverses(&b, 16).unwrap().len(), 2);
    }

    #[test]
    fn k3_is_strictly_simple() {
        // simple with no proper nontrivial subalgebra
        let k3 = crate::kexpansion::named(crate::kexpansion::NamedKLattice::K3).unwrap();
        let subs = all_subuniverses(&k3, 16).unwrap();
        assert_eq!(subs.len(), 2);
        assert!(crate::congruences::is_simple(&k3).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let big = k_expand(&wajsberg_chain(4).unwrap()).unwrap();
        assert!(matches!(all_subuniverses(big.algebra(), 16), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn wajsberg_embeddings_follow_divisibility() {
        for n in 1..=8usize {
            for m in 1..=8usize {
                let ln = wajsberg_chain(n).unwrap();
                let lm = wajsberg_chain(m).unwrap();
                assert_eq!(
                    embeds_into(&ln, &lm, 16).unwrap(),
                    m % n == 0,
                    "Ł_{n} <= Ł_{m} should be {}",
                    m % n == 0
                );
            }
        }
    }

    #[test]
    fn l2_and_g3_are_not_isomorphic() {
        let l2 = wajsberg_chain(2).unwrap();
        let g3 = godel_chain(3).unwrap();
        assert!(is_isomorphic(&l2, &g3).is_none());
        assert!(is_isomorphic(&l2, &l2).is_some());
    }

    #[test]
    fn identity_isomorphism_is_found() {
        let g4 = godel_chain(4).unwrap();
        let map = is_isomorphic(&g4, &g4).unwrap();
        assert_eq!(map, (0..g4.size()).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_form_is_iso_invariant() {
        let sq = direct_product(&[two().unwrap(), two().unwrap()]).unwrap();
        // relabel by a nontrivial automorphism-breaking permutation
        let perm = vec![3, 1, 2, 0];
        let relabeled = sq.apply_permutation(&perm);
        assert_eq!(canonical_key(&sq), canonical_key(&relabeled));
        assert!(is_isomorphic(&canonical_form(&sq), &sq).is_some());
    }

    #[test]
    fn canonical_form_separates_non_isomorphic_chains() {
        assert_ne!(
            canonical_key(&wajsberg_chain(2).unwrap()),
            canonical_key(&godel_chain(3).unwrap())
        );
    }

    #[test]
    fn tightness_of_small_chains() {
        assert!(is_tight(&wajsberg_chain(3).unwrap()));
        assert!(!is_tight(&wajsberg_chain(4).unwrap()));
        assert!(!is_tight(&two().unwrap()));
        assert!(!is_tight(&godel_chain(3).unwrap()));
        assert!(is_tight(&c5().unwrap()));
        assert!(!is_tight(&trivial()));
    }

    #[test]
    fn canonical_form_stability_on_generated_corpus() {
        // fifty small algebras: chains, products and relabellings
        let mut corpus: Vec<FiniteAlgebra> = Vec::new();
        for n in 2..=6 {
            corpus.push(godel_chain(n).unwrap());
        }
        for n in 1..=5 {
            corpus.push(wajsberg_chain(n).unwrap());
        }
        corpus.push(c5().unwrap());
        let base: Vec<FiniteAlgebra> = corpus.clone();
        for a in &base {
            for b in &base {
                if a.size() * b.size() <= 9 {
                    corpus.push(direct_product(&[a.clone(), b.clone()]).unwrap());
                }
            }
        }
        // deterministic relabellings
        let mut extra = Vec::new();
        for (k, a) in (1usize..).zip(corpus.iter()) {
            let n = a.size();
            let perm: Vec<usize> = (0..n).map(|i| (i + k) % n).collect();
            extra.push(a.apply_permutation(&perm));
            if corpus.len() + extra.len() >= 50 {
                break;
            }
        }
        corpus.extend(extra);
        assert!(corpus.len() >= 50);
        for (i, a) in corpus.iter().enumerate() {
            for b in corpus.iter().skip(i) {
                let iso = is_isomorphic(a, b).is_some();
                let same_key = canonical_key(a) == canonical_key(b);
                assert_eq!(iso, same_key);
            }
        }
    }
}
