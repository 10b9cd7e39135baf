//! The named finite algebras and the two basic composition operators.
//!
//! Chains are laid out in ascending order: index 0 is the bottom and
//! `size - 1` the top. Ordinal sums instead keep the left summand first,
//! then the right summand, with the shared unit last; this keeps golden
//! outputs deterministic.

use crate::algebra::FiniteAlgebra;
use crate::{Error, Result};

/// The one-element algebra.
pub fn trivial() -> FiniteAlgebra {
    FiniteAlgebra::from_tables(1, vec![0], vec![0], vec![0], vec![0], 0, None, Some(vec!["1".into()]))
        .expect("trivial tables are well formed")
        .validated()
        .expect("trivial algebra is valid")
}

/// The two-element Boolean chain {0, 1} with multiplication = meet.
pub fn two() -> Result<FiniteAlgebra> {
    let mut g = godel_chain(2)?;
    g.set_labels(Some(vec!["0".into(), "1".into()]));
    Ok(g)
}

/// The n-element Gödel chain: idempotent, `x -> y` is 1 for `x <= y` and
/// `y` otherwise.
pub fn godel_chain(n: usize) -> Result<FiniteAlgebra> {
    if n < 2 {
        return Err(Error::Precondition(format!("godel_chain needs n >= 2, got {n}")));
    }
    let top = n - 1;
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            join[a * n + b] = a.max(b);
            meet[a * n + b] = a.min(b);
            imp[a * n + b] = if a <= b { top } else { b };
        }
    }
    let mult = meet.clone();
    let labels = if n == 2 {
        vec!["0".into(), "1".into()]
    } else {
        let mut l = vec!["0".to_string()];
        for i in 1..top {
            l.push(if n == 3 { "a".into() } else { format!("a{i}") });
        }
        l.push("1".into());
        l
    };
    FiniteAlgebra::from_tables(n, join, meet, mult, imp, top, None, Some(labels))?.validated()
}

/// The (n+1)-element Wajsberg chain Ł_n: element index `i` stands for
/// `a^(n-i)`, so `a^r a^s = a^min(r+s,n)` and `a^r -> a^s = a^max(s-r,0)`.
pub fn wajsberg_chain(n: usize) -> Result<FiniteAlgebra> {
    if n < 1 {
        return Err(Error::Precondition(format!("wajsberg_chain needs n >= 1, got {n}")));
    }
    let size = n + 1;
    let top = n;
    let mut join = vec![0; size * size];
    let mut meet = vec![0; size * size];
    let mut mult = vec![0; size * size];
    let mut imp = vec![0; size * size];
    for i in 0..size {
        for j in 0..size {
            join[i * size + j] = i.max(j);
            meet[i * size + j] = i.min(j);
            mult[i * size + j] = (i + j).saturating_sub(n);
            imp[i * size + j] = (n + j - i).min(n);
        }
    }
    let labels = (0..size)
        .map(|i| {
            let r = n - i;
            match r {
                0 => "1".into(),
                r if r == n => "0".into(),
                1 => "a".into(),
                r => format!("a^{r}"),
            }
        })
        .collect();
    FiniteAlgebra::from_tables(size, join, meet, mult, imp, top, None, Some(labels))?.validated()
}

/// Result of an ordinal sum: the sum itself plus the embeddings of both
/// summands (the shared unit maps to the last index).
pub struct OrdinalSum {
    pub algebra: FiniteAlgebra,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Stacks `a1` above `a0`, sharing the unit. Both summands must be
/// integral. For finite summands the sum always exists; when the unit of
/// `a0` is join-reducible the joins that used to hit 1 are repaired to the
/// bottom of `a1`.
pub fn ordinal_sum(a0: &FiniteAlgebra, a1: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    Ok(ordinal_sum_with_maps(a0, a1)?.algebra)
}

pub fn ordinal_sum_with_maps(a0: &FiniteAlgebra, a1: &FiniteAlgebra) -> Result<OrdinalSum> {
    for (side, a) in [("left", a0), ("right", a1)] {
        if !a.is_integral() {
            return Err(Error::Precondition(format!("{side} summand is not integral")));
        }
    }
    let n0 = a0.size() - 1; // left part, unit removed
    let n1 = a1.size() - 1;
    let size = n0 + n1 + 1;
    let one = size - 1;

    // index maps: left elements keep their order, then right, unit last
    let mut left = vec![0; a0.size()];
    let mut right = vec![0; a1.size()];
    {
        let mut next = 0;
        for x in a0.elements() {
            if x == a0.one() {
                left[x] = one;
            } else {
                left[x] = next;
                next += 1;
            }
        }
        for x in a1.elements() {
            if x == a1.one() {
                right[x] = one;
            } else {
                right[x] = next;
                next += 1;
            }
        }
    }
    // inverse decode: which summand and which original element
    #[derive(Clone, Copy, PartialEq)]
    enum Part {
        Left(usize),
        Right(usize),
        Unit,
    }
    let mut decode = vec![Part::Unit; size];
    for x in a0.elements() {
        if x != a0.one() {
            decode[left[x]] = Part::Left(x);
        }
    }
    for x in a1.elements() {
        if x != a1.one() {
            decode[right[x]] = Part::Right(x);
        }
    }

    let bottom_right: Option<usize> = a1.is_bounded().map(|b| {
        if b == a1.one() {
            one
        } else {
            right[b]
        }
    });

    let leq = |u: usize, v: usize| -> bool {
        match (decode[u], decode[v]) {
            (_, Part::Unit) => true,
            (Part::Unit, _) => false,
            (Part::Left(_), Part::Right(_)) => true,
            (Part::Right(_), Part::Left(_)) => false,
            (Part::Left(x), Part::Left(y)) => a0.leq(x, y),
            (Part::Right(x), Part::Right(y)) => a1.leq(x, y),
        }
    };

    let mut join = vec![0; size * size];
    let mut meet = vec![0; size * size];
    let mut mult = vec![0; size * size];
    let mut imp = vec![0; size * size];
    for u in 0..size {
        for v in 0..size {
            let (du, dv) = (decode[u], decode[v]);
            meet[u * size + v] = match (du, dv) {
                (Part::Unit, _) => v,
                (_, Part::Unit) => u,
                (Part::Left(_), Part::Right(_)) => u,
                (Part::Right(_), Part::Left(_)) => v,
                (Part::Left(x), Part::Left(y)) => left[a0.meet(x, y)],
                (Part::Right(x), Part::Right(y)) => right[a1.meet(x, y)],
            };
            join[u * size + v] = match (du, dv) {
                (Part::Unit, _) | (_, Part::Unit) => one,
                (Part::Left(_), Part::Right(_)) => v,
                (Part::Right(_), Part::Left(_)) => u,
                (Part::Left(x), Part::Left(y)) => {
                    let j = a0.join(x, y);
                    if j == a0.one() {
                        // repaired join: least upper bound lives in the right part
                        bottom_right.expect("finite algebras are bounded")
                    } else {
                        left[j]
                    }
                }
                (Part::Right(x), Part::Right(y)) => right[a1.join(x, y)],
            };
            mult[u * size + v] = match (du, dv) {
                (Part::Unit, _) => v,
                (_, Part::Unit) => u,
                (Part::Left(_), Part::Right(_)) => u,
                (Part::Right(_), Part::Left(_)) => v,
                (Part::Left(x), Part::Left(y)) => left[a0.mult(x, y)],
                (Part::Right(x), Part::Right(y)) => right[a1.mult(x, y)],
            };
            imp[u * size + v] = if leq(u, v) {
                one
            } else {
                match (du, dv) {
                    (Part::Unit, _) => v,
                    (Part::Left(x), Part::Left(y)) => left[a0.imp(x, y)],
                    (Part::Right(x), Part::Right(y)) => right[a1.imp(x, y)],
                    // strictly above, different parts: residual is the lower element
                    (Part::Right(_), Part::Left(_)) => v,
                    _ => unreachable!("u <= v was handled"),
                }
            };
        }
    }

    let mut labels = vec![String::new(); size];
    for x in a0.elements() {
        if x != a0.one() {
            labels[left[x]] = format!("L:{}", a0.label(x));
        }
    }
    for x in a1.elements() {
        if x != a1.one() {
            labels[right[x]] = format!("R:{}", a1.label(x));
        }
    }
    labels[one] = "1".into();

    let algebra =
        FiniteAlgebra::from_tables(size, join, meet, mult, imp, one, None, Some(labels))?.validated()?;
    Ok(OrdinalSum { algebra, left, right })
}

/// Componentwise product with lexicographic index flattening.
pub fn direct_product(algebras: &[FiniteAlgebra]) -> Result<FiniteAlgebra> {
    if algebras.is_empty() {
        return Err(Error::Precondition("direct_product of an empty list".into()));
    }
    let mut acc = algebras[0].clone();
    for b in &algebras[1..] {
        acc = product_of_two(&acc, b)?;
    }
    Ok(acc)
}

fn product_of_two(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    let idx = |x: usize, y: usize| x * nb + y;
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    let mut mult = vec![0; n * n];
    let mut imp = vec![0; n * n];
    for xa in 0..na {
        for xb in 0..nb {
            for ya in 0..na {
                for yb in 0..nb {
                    let (u, v) = (idx(xa, xb), idx(ya, yb));
                    join[u * n + v] = idx(a.join(xa, ya), b.join(xb, yb));
                    meet[u * n + v] = idx(a.meet(xa, ya), b.meet(xb, yb));
                    mult[u * n + v] = idx(a.mult(xa, ya), b.mult(xb, yb));
                    imp[u * n + v] = idx(a.imp(xa, ya), b.imp(xb, yb));
                }
            }
        }
    }
    let one = idx(a.one(), b.one());
    let zero = match (a.zero(), b.zero()) {
        (Some(za), Some(zb)) => Some(idx(za, zb)),
        _ => None,
    };
    let labels = (0..n)
        .map(|i| {
            let (x, y) = (i / nb, i % nb);
            // flatten nested tuples so repeated products stay readable
            let lx = a.label(x);
            let inner = lx.strip_prefix('(').and_then(|s| s.strip_suffix(')'));
            match inner {
                Some(s) => format!("({},{})", s, b.label(y)),
                None => format!("({},{})", lx, b.label(y)),
            }
        })
        .collect();
    FiniteAlgebra::from_tables(n, join, meet, mult, imp, one, zero, Some(labels))?.validated()
}

/// The five-element tight chain `0 = a^3 < a^2 < a->0 < a < 1`.
///
/// The operation table is pinned by exhaustive search over all monotone,
/// commutative, associative, residuated tables on a five-element chain
/// subject to the order constraints; the construction fails loudly if the
/// constraints do not pin a unique algebra.
pub fn c5() -> Result<FiniteAlgebra> {
    let n = 5usize;
    let one = 4usize;
    let a = 3usize;
    let a2 = 1usize;
    let a_to_0 = 2usize;

    // free entries: mult on pairs below the unit
    let pairs: Vec<(usize, usize)> = (0..one)
        .flat_map(|i| (i..one).map(move |j| (i, j)))
        .collect();
    let mut candidates = Vec::new();
    let mut choice = vec![0usize; pairs.len()];
    search_c5_tables(&pairs, 0, &mut choice, &mut candidates, n, one, a, a2, a_to_0);
    match candidates.len() {
        0 => Err(Error::Construction("no five-element chain meets the constraints".into())),
        1 => {
            let alg = candidates.pop().expect("one candidate");
            let tight = crate::subalgebras::is_tight(&alg);
            if !tight {
                return Err(Error::Construction("searched chain is not tight".into()));
            }
            Ok(alg)
        }
        k => Err(Error::Construction(format!(
            "constraints are ambiguous: {k} candidate chains"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn search_c5_tables(
    pairs: &[(usize, usize)],
    at: usize,
    choice: &mut Vec<usize>,
    out: &mut Vec<FiniteAlgebra>,
    n: usize,
    one: usize,
    a: usize,
    a2: usize,
    a_to_0: usize,
) {
    if at == pairs.len() {
        if let Some(alg) = assemble_c5(pairs, choice, n, one, a, a2, a_to_0) {
            out.push(alg);
        }
        return;
    }
    let (i, j) = pairs[at];
    // integrality forces x*y <= min(x, y)
    for v in 0..=i.min(j) {
        choice[at] = v;
        // monotonicity against already-fixed smaller pairs
        let value = |x: usize, y: usize, upto: usize, choice: &[usize]| -> Option<usize> {
            if x == one {
                return Some(y);
            }
            if y == one {
                return Some(x);
            }
            let (p, q) = (x.min(y), x.max(y));
            pairs[..=upto].iter().position(|&e| e == (p, q)).map(|k| choice[k])
        };
        let mut ok = true;
        'mono: for x in 0..n {
            for y in 0..n {
                for y2 in y + 1..n {
                    if let (Some(v1), Some(v2)) = (value(x, y, at, choice), value(x, y2, at, choice)) {
                        if v1 > v2 {
                            ok = false;
                            break 'mono;
                        }
                    }
                }
            }
        }
        if ok {
            search_c5_tables(pairs, at + 1, choice, out, n, one, a, a2, a_to_0);
        }
    }
}

fn assemble_c5(
    pairs: &[(usize, usize)],
    choice: &[usize],
    n: usize,
    one: usize,
    a: usize,
    a2: usize,
    a_to_0: usize,
) -> Option<FiniteAlgebra> {
    let mut mult = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            mult[x * n + y] = if x == one {
                y
            } else if y == one {
                x
            } else {
                let (p, q) = (x.min(y), x.max(y));
                let k = pairs.iter().position(|&e| e == (p, q)).expect("pair enumerated");
                choice[k]
            };
        }
    }
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
    // residual on a chain: the largest z with x*z <= y
    let mut imp = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            imp[x * n + y] = (0..n).rev().find(|&z| mult[x * n + z] <= y)?;
        }
    }
    // order constraints: a^2, a^3 and a->0 land where the chain says
    if mult[a * n + a] != a2 || mult[a2 * n + a] != 0 || imp[a * n] != a_to_0 {
        return None;
    }
    let mut join = vec![0usize; n * n];
    let mut meet = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            join[x * n + y] = x.max(y);
            meet[x * n + y] = x.min(y);
        }
    }
    let labels = vec!["0".into(), "a^2".into(), "a->0".into(), "a".into(), "1".into()];
    let alg = FiniteAlgebra::from_tables(n, join, meet, mult, imp, one, None, Some(labels))
        .ok()?
        .validated()
        .ok()?;
    // the generator must reach every element
    let generated = crate::subalgebras::closure(&alg, &[a]);
    if generated.len() != n {
        return None;
    }
    Some(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ElementOrder;
    use crate::subalgebras::is_isomorphic;

    #[test]
    fn godel_chain_is_iterated_sum_of_two() {
        let g3 = godel_chain(3).unwrap();
        let sum = ordinal_sum(&two().unwrap(), &two().unwrap()).unwrap();
        assert!(is_isomorphic(&g3, &sum).is_some());
        let g4 = godel_chain(4).unwrap();
        let sum3 = ordinal_sum(&sum, &two().unwrap()).unwrap();
        assert!(is_isomorphic(&g4, &sum3).is_some());
    }

    #[test]
    fn wajsberg_1_is_two() {
        assert!(is_isomorphic(&wajsberg_chain(1).unwrap(), &two().unwrap()).is_some());
    }

    #[test]
    fn godel_chains_are_prelinear_divisible_idempotent() {
        use crate::terms::{named_equation, satisfies};
        let g3 = godel_chain(3).unwrap();
        for name in ["P", "D", "pot1"] {
            assert!(satisfies(&g3, &named_equation(name).unwrap()), "{name} fails on G_3");
        }
    }

    #[test]
    fn sum_with_trivial_is_identity() {
        let l2 = wajsberg_chain(2).unwrap();
        assert!(is_isomorphic(&ordinal_sum(&l2, &trivial()).unwrap(), &l2).is_some());
        assert!(is_isomorphic(&ordinal_sum(&trivial(), &l2).unwrap(), &l2).is_some());
    }

    #[test]
    fn sum_two_l2_is_a_valid_divisible_chain() {
        let s = ordinal_sum(&two().unwrap(), &wajsberg_chain(2).unwrap()).unwrap();
        assert_eq!(s.size(), 4);
        assert!(s.is_chain());
        assert!(s.validate().passed());
        // divisibility: x(x -> y) = y(y -> x)
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!(s.mult(x, s.imp(x, y)), s.mult(y, s.imp(y, x)));
            }
        }
    }

    #[test]
    fn sum_is_associative_up_to_isomorphism() {
        let parts = [two().unwrap(), wajsberg_chain(2).unwrap(), godel_chain(3).unwrap()];
        for a in &parts {
            for b in &parts {
                for c in &parts {
                    let left = ordinal_sum(&ordinal_sum(a, b).unwrap(), c).unwrap();
                    let right = ordinal_sum(a, &ordinal_sum(b, c).unwrap()).unwrap();
                    assert!(is_isomorphic(&left, &right).is_some());
                }
            }
        }
    }

    #[test]
    fn sum_rejects_non_integral_input() {
        let k4 = crate::kexpansion::k_expand(&two().unwrap()).unwrap();
        assert!(ordinal_sum(k4.algebra(), &two().unwrap()).is_err());
    }

    #[test]
    fn join_repair_uses_bottom_of_upper_summand() {
        // 2x2 has a join-reducible unit, so stacking anything bounded on
        // top must route the old top-joins through the new bottom.
        let square = direct_product(&[two().unwrap(), two().unwrap()]).unwrap();
        let s = ordinal_sum(&square, &wajsberg_chain(2).unwrap()).unwrap();
        assert!(s.validate().passed());
        // the two atoms of the square join to the bottom of Ł_2, not to 1
        let atoms: Vec<usize> = s
            .elements()
            .filter(|&x| s.label(x).starts_with("L:") && s.label(x) != "L:(0,0)")
            .collect();
        assert_eq!(atoms.len(), 2);
        let j = s.join(atoms[0], atoms[1]);
        assert_eq!(s.label(j), "R:0");
    }

    #[test]
    fn product_of_two_twos_is_square() {
        let sq = direct_product(&[two().unwrap(), two().unwrap()]).unwrap();
        assert_eq!(sq.size(), 4);
        assert!(!sq.is_chain());
        assert!(sq.validate().passed());
        // distributive because both factors are chains
        for a in sq.elements() {
            for b in sq.elements() {
                for c in sq.elements() {
                    assert_eq!(sq.meet(a, sq.join(b, c)), sq.join(sq.meet(a, b), sq.meet(a, c)));
                }
            }
        }
    }

    #[test]
    fn product_of_singleton_list() {
        let l2 = wajsberg_chain(2).unwrap();
        assert!(is_isomorphic(&direct_product(std::slice::from_ref(&l2)).unwrap(), &l2).is_some());
    }

    #[test]
    fn c5_is_pinned_uniquely() {
        let c = c5().unwrap();
        assert_eq!(c.size(), 5);
        assert!(c.validate().passed());
        assert_eq!(c.element_order(3).unwrap(), ElementOrder::Finite(3));
        // a * (a -> 0) = 0 and the residual sits strictly between a^2 and a
        assert_eq!(c.mult(3, 2), 0);
        assert_eq!(c.imp(3, 0), 2);
        assert!(crate::subalgebras::is_tight(&c));
    }

    #[test]
    fn chain_errors() {
        assert!(godel_chain(1).is_err());
        assert!(wajsberg_chain(0).is_err());
        assert!(direct_product(&[]).is_err());
    }
}
