//! Finite commutative residuated lattices presented by operation tables.
//!
//! Elements are dense indices `0..size`; each binary operation is a
//! row-major `size * size` table, so evaluation is a single lookup. The
//! lattice order is derived from meet: `a <= b` iff `meet(a, b) == a`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite commutative residuated lattice given by explicit tables.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    size: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
    mult: Vec<usize>,
    imp: Vec<usize>,
    one: usize,
    zero: Option<usize>,
    labels: Option<Vec<String>>,
}

/// Structural equality ignores labels: two algebras are equal when they
/// have the same tables and constants.
impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.one == other.one
            && self.zero == other.zero
            && self.join == other.join
            && self.meet == other.meet
            && self.mult == other.mult
            && self.imp == other.imp
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    /// Builds an algebra from flat row-major tables, checking only shape
    /// and range. Axioms are checked separately by [`FiniteAlgebra::validate`].
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        size: usize,
        join: Vec<usize>,
        meet: Vec<usize>,
        mult: Vec<usize>,
        imp: Vec<usize>,
        one: usize,
        zero: Option<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Malformed("empty universe".into()));
        }
        for (name, t) in [("join", &join), ("meet", &meet), ("mult", &mult), ("imp", &imp)] {
            if t.len() != size * size {
                return Err(Error::Malformed(format!(
                    "{name} table has {} entries, expected {}",
                    t.len(),
                    size * size
                )));
            }
            if let Some(&bad) = t.iter().find(|&&v| v >= size) {
                return Err(Error::Malformed(format!("{name} table entry {bad} out of range")));
            }
        }
        if one >= size {
            return Err(Error::Malformed(format!("unit {one} out of range")));
        }
        if let Some(z) = zero {
            if z >= size {
                return Err(Error::Malformed(format!("zero {z} out of range")));
            }
        }
        if let Some(ref l) = labels {
            if l.len() != size {
                return Err(Error::Malformed(format!(
                    "{} labels for {} elements",
                    l.len(),
                    size
                )));
            }
        }
        Ok(FiniteAlgebra { size, join, meet, mult, imp, one, zero, labels })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> usize {
        self.one
    }

    /// The distinguished bottom constant, if 0 is part of the signature.
    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size + b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size + b]
    }

    /// Order from meet: `a <= b` iff `meet(a, b) == a`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// `~a := a -> 1`.
    pub fn neg(&self, a: usize) -> usize {
        self.imp(a, self.one)
    }

    /// Truncated implication `a ->1 b := (a -> b) /\ 1`.
    pub fn imp1(&self, a: usize, b: usize) -> usize {
        self.meet(self.imp(a, b), self.one)
    }

    /// `a^n` with `a^0 = 1`.
    pub fn power(&self, a: usize, n: u32) -> usize {
        let mut acc = self.one;
        for _ in 0..n {
            acc = self.mult(acc, a);
        }
        acc
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mult(a, a) == a
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        if let Some(ref l) = labels {
            assert_eq!(l.len(), self.size);
        }
        self.labels = labels;
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// True iff the monoid unit is the top of the lattice.
    pub fn is_integral(&self) -> bool {
        self.elements().all(|a| self.leq(a, self.one))
    }

    /// The global minimum, if one exists (it always does in a valid
    /// finite lattice, but corrupted tables may lack one).
    pub fn is_bounded(&self) -> Option<usize> {
        self.elements().find(|&b| self.elements().all(|a| self.leq(b, a)))
    }

    /// The global maximum, if one exists.
    pub fn top(&self) -> Option<usize> {
        self.elements().find(|&t| self.elements().all(|a| self.leq(a, t)))
    }

    /// The bottom element used as "0" in formulas: the signature constant
    /// when present, otherwise the computed minimum.
    pub fn bottom(&self) -> Option<usize> {
        self.zero.or_else(|| self.is_bounded())
    }

    /// The same algebra with the 0 constant dropped from the signature
    /// (tables unchanged). Subuniverses of the reduct need not contain
    /// the old bottom.
    pub fn without_zero(&self) -> FiniteAlgebra {
        let mut out = self.clone();
        out.zero = None;
        out
    }

    /// True iff the order is total.
    pub fn is_chain(&self) -> bool {
        self.elements().all(|a| (a..self.size).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// True iff `x = a \/ b` forces `x = a` or `x = b`.
    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| self.join(a, b) != x || a == x || b == x)
        })
    }

    /// True iff `x = a /\ b` forces `x = a` or `x = b`.
    pub fn is_meet_irreducible(&self, x: usize) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| self.meet(a, b) != x || a == x || b == x)
        })
    }

    /// Order of an element: the least `n` with `a^n = 0`, or `Infinite`
    /// when the power sequence cycles without reaching bottom.
    pub fn element_order(&self, a: usize) -> Result<ElementOrder> {
        let zero = self
            .bottom()
            .ok_or_else(|| Error::Precondition("element_order needs a bounded algebra".into()))?;
        let mut seen = vec![false; self.size];
        let mut acc = self.one;
        let mut n: u32 = 0;
        loop {
            acc = self.mult(acc, a);
            n += 1;
            if acc == zero {
                return Ok(ElementOrder::Finite(n));
            }
            if seen[acc] {
                return Ok(ElementOrder::Infinite);
            }
            seen[acc] = true;
        }
    }

    /// The set of infinite-order elements (plus 1, which only matters in
    /// the one-element algebra where 1 = 0). For the algebras built here
    /// it is a filter closed under multiplication, and this is asserted.
    pub fn radical(&self) -> Result<Vec<usize>> {
        if self.bottom().is_none() {
            return Err(Error::Precondition("radical needs a bounded algebra".into()));
        }
        let rad: Vec<usize> = self
            .elements()
            .filter(|&a| {
                a == self.one || matches!(self.element_order(a), Ok(ElementOrder::Infinite))
            })
            .collect();
        let inside = |x: usize| rad.binary_search(&x).is_ok();
        if !inside(self.one) {
            return Err(Error::Invalid("radical does not contain 1".into()));
        }
        for &a in &rad {
            for b in self.elements() {
                if self.leq(a, b) && !inside(b) {
                    return Err(Error::Invalid("radical is not upward closed".into()));
                }
            }
            for &b in &rad {
                if !inside(self.mult(a, b)) {
                    return Err(Error::Invalid("radical is not closed under mult".into()));
                }
            }
        }
        Ok(rad)
    }

    /// Checks all defining axioms and reports every violated instance.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let n = self.size;
        let mut fail = |axiom: &'static str, witness: Vec<usize>| {
            failures.push(Failure { axiom, witness });
        };

        for a in 0..n {
            if self.join(a, a) != a {
                fail("join-idempotent", vec![a]);
            }
            if self.meet(a, a) != a {
                fail("meet-idempotent", vec![a]);
            }
            if self.mult(self.one, a) != a {
                fail("mult-identity", vec![a]);
            }
            for b in 0..n {
                if self.join(a, b) != self.join(b, a) {
                    fail("join-commutative", vec![a, b]);
                }
                if self.meet(a, b) != self.meet(b, a) {
                    fail("meet-commutative", vec![a, b]);
                }
                if self.mult(a, b) != self.mult(b, a) {
                    fail("mult-commutative", vec![a, b]);
                }
                if self.join(a, self.meet(a, b)) != a {
                    fail("absorption-join", vec![a, b]);
                }
                if self.meet(a, self.join(a, b)) != a {
                    fail("absorption-meet", vec![a, b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.join(self.join(a, b), c) != self.join(a, self.join(b, c)) {
                        fail("join-associative", vec![a, b, c]);
                    }
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)) {
                        fail("meet-associative", vec![a, b, c]);
                    }
                    if self.mult(self.mult(a, b), c) != self.mult(a, self.mult(b, c)) {
                        fail("mult-associative", vec![a, b, c]);
                    }
                    // ab <= c iff a <= b -> c
                    if self.leq(self.mult(a, b), c) != self.leq(a, self.imp(b, c)) {
                        fail("residuation", vec![a, b, c]);
                    }
                }
            }
        }
        if let Some(z) = self.zero {
            for a in 0..n {
                if !self.leq(z, a) {
                    fail("zero-bottom", vec![z, a]);
                }
            }
        }
        ValidationReport { failures }
    }

    /// Validates and returns the algebra, or an error naming the first
    /// violated axiom.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.passed() {
            Ok(self)
        } else {
            let f = &report.failures()[0];
            Err(Error::Invalid(format!(
                "axiom {} fails at {:?} ({} failures total)",
                f.axiom,
                f.witness,
                report.failures().len()
            )))
        }
    }

    /// Restriction to a closed subset. `elems` must be sorted, contain the
    /// constants and be closed under all four operations.
    pub fn restrict(&self, elems: &[usize]) -> Result<FiniteAlgebra> {
        let pos = |x: usize| -> Result<usize> {
            elems
                .binary_search(&x)
                .map_err(|_| Error::Precondition(format!("subset not closed: element {x} missing")))
        };
        let m = elems.len();
        if m == 0 {
            return Err(Error::Precondition("empty subset".into()));
        }
        let mut join = vec![0; m * m];
        let mut meet = vec![0; m * m];
        let mut mult = vec![0; m * m];
        let mut imp = vec![0; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                join[i * m + j] = pos(self.join(a, b))?;
                meet[i * m + j] = pos(self.meet(a, b))?;
                mult[i * m + j] = pos(self.mult(a, b))?;
                imp[i * m + j] = pos(self.imp(a, b))?;
            }
        }
        let one = pos(self.one)?;
        let zero = match self.zero {
            Some(z) => Some(pos(z)?),
            None => None,
        };
        let labels = self
            .labels
            .as_ref()
            .map(|l| elems.iter().map(|&e| l[e].clone()).collect());
        FiniteAlgebra::from_tables(m, join, meet, mult, imp, one, zero, labels)
    }

    /// Applies a relabelling permutation: element `i` becomes `perm[i]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> FiniteAlgebra {
        let n = self.size;
        assert_eq!(perm.len(), n);
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        let mut mult = vec![0; n * n];
        let mut imp = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (pa, pb) = (perm[a], perm[b]);
                join[pa * n + pb] = perm[self.join(a, b)];
                meet[pa * n + pb] = perm[self.meet(a, b)];
                mult[pa * n + pb] = perm[self.mult(a, b)];
                imp[pa * n + pb] = perm[self.imp(a, b)];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for (i, lab) in l.iter().enumerate() {
                out[perm[i]] = lab.clone();
            }
            out
        });
        FiniteAlgebra {
            size: n,
            join,
            meet,
            mult,
            imp,
            one: perm[self.one],
            zero: self.zero.map(|z| perm[z]),
            labels,
        }
    }

    /// Serializes to the interchange JSON document.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraDoc::from(self)).expect("serialization cannot fail")
    }

    /// Parses the interchange JSON document, checking shapes and ranges.
    pub fn from_json(text: &str) -> Result<FiniteAlgebra> {
        let doc: AlgebraDoc = serde_json::from_str(text)?;
        doc.into_algebra()
    }
}

/// Element order: least power reaching bottom, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(u32),
    Infinite,
}

/// One violated axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

/// Outcome of [`FiniteAlgebra::validate`]: passed iff no failures.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }
}

/// Interchange document: `{ size, one, zero, join, meet, mult, imp, labels }`
/// with tables as nested arrays and labels keyed by element index.
#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    size: usize,
    one: usize,
    zero: Option<usize>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    mult: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<String, String>>,
}

impl AlgebraDoc {
    fn into_algebra(self) -> Result<FiniteAlgebra> {
        let flatten = |name: &str, rows: Vec<Vec<usize>>, n: usize| -> Result<Vec<usize>> {
            if rows.len() != n {
                return Err(Error::Malformed(format!("{name} has {} rows, expected {n}", rows.len())));
            }
            let mut flat = Vec::with_capacity(n * n);
            for row in rows {
                if row.len() != n {
                    return Err(Error::Malformed(format!(
                        "{name} row has {} entries, expected {n}",
                        row.len()
                    )));
                }
                flat.extend(row);
            }
            Ok(flat)
        };
        let n = self.size;
        let labels = match self.labels {
            None => None,
            Some(map) => {
                let mut l: Vec<String> = (0..n).map(|i| i.to_string()).collect();
                for (k, v) in map {
                    let i: usize = k
                        .parse()
                        .map_err(|_| Error::Malformed(format!("label key {k:?} is not an index")))?;
                    if i >= n {
                        return Err(Error::Malformed(format!("label key {i} out of range")));
                    }
                    l[i] = v;
                }
                Some(l)
            }
        };
        FiniteAlgebra::from_tables(
            n,
            flatten("join", self.join, n)?,
            flatten("meet", self.meet, n)?,
            flatten("mult", self.mult, n)?,
            flatten("imp", self.imp, n)?,
            self.one,
            self.zero,
            labels,
        )
    }
}

impl From<&FiniteAlgebra> for AlgebraDoc {
    fn from(a: &FiniteAlgebra) -> Self {
        let n = a.size;
        let rows = |t: &[usize]| (0..n).map(|i| t[i * n..(i + 1) * n].to_vec()).collect();
        AlgebraDoc {
            size: n,
            one: a.one,
            zero: a.zero,
            join: rows(&a.join),
            meet: rows(&a.meet),
            mult: rows(&a.mult),
            imp: rows(&a.imp),
            labels: a
                .labels
                .as_ref()
                .map(|l| l.iter().enumerate().map(|(i, s)| (i.to_string(), s.clone())).collect()),
        }
    }
}
