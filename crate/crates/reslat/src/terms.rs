//! Terms, equations, the equation parser, brute-force model checking, and
//! the kappa translation between integral axioms and twist-product axioms.
//!
//! Grammar (ascii): `t ::= var | "1" | "0" | t "\/" t | t "/\" t | t "*" t
//! | t "->" t | "~" t | "(" t ")"` and `equation ::= t "=" t`, with
//! precedence `~  >  *  >  /\  >  \/  >  ->` and right-associative `->`.
//! `~t` expands to `t -> 1` while parsing.

use std::fmt::Write as _;

use crate::algebra::FiniteAlgebra;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    One,
    Zero,
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Mult(Box<Term>, Box<Term>),
    Imp(Box<Term>, Box<Term>),
}

pub fn var(i: usize) -> Term {
    Term::Var(i)
}

impl Term {
    pub fn join(self, other: Term) -> Term {
        Term::Join(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn mult(self, other: Term) -> Term {
        Term::Mult(Box::new(self), Box::new(other))
    }

    pub fn imp(self, other: Term) -> Term {
        Term::Imp(Box::new(self), Box::new(other))
    }

    /// `~t := t -> 1`.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Term {
        self.imp(Term::One)
    }

    /// Truncated implication `t ->1 s := (t -> s) /\ 1`.
    pub fn imp1(self, other: Term) -> Term {
        self.imp(other).meet(Term::One)
    }

    /// `t^n`, with `t^0 = 1`.
    pub fn pow(&self, n: u32) -> Term {
        let mut acc = Term::One;
        for _ in 0..n {
            acc = if acc == Term::One { self.clone() } else { acc.mult(self.clone()) };
        }
        acc
    }

    /// Number of variables: one past the largest index used.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::One | Term::Zero => 0,
            Term::Join(a, b) | Term::Meet(a, b) | Term::Mult(a, b) | Term::Imp(a, b) => {
                a.arity().max(b.arity())
            }
        }
    }

    pub fn contains_zero(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) | Term::One => false,
            Term::Join(a, b) | Term::Meet(a, b) | Term::Mult(a, b) | Term::Imp(a, b) => {
                a.contains_zero() || b.contains_zero()
            }
        }
    }

    /// Renders the term in the parser's grammar using `names` for
    /// variables (falling back to `x<i>`).
    pub fn display(&self, names: &[String]) -> String {
        fn prec(t: &Term) -> u8 {
            match t {
                Term::Var(_) | Term::One | Term::Zero => 5,
                Term::Mult(_, _) => 4,
                Term::Meet(_, _) => 3,
                Term::Join(_, _) => 2,
                Term::Imp(_, _) => 1,
            }
        }
        fn go(t: &Term, names: &[String], out: &mut String, parent: u8) {
            let p = prec(t);
            let wrap = p < parent;
            if wrap {
                out.push('(');
            }
            match t {
                Term::Var(i) => {
                    match names.get(*i) {
                        Some(n) => out.push_str(n),
                        None => {
                            let _ = write!(out, "x{i}");
                        }
                    };
                }
                Term::One => out.push('1'),
                Term::Zero => out.push('0'),
                Term::Join(a, b) => {
                    go(a, names, out, p);
                    out.push_str(" \\/ ");
                    go(b, names, out, p + 1);
                }
                Term::Meet(a, b) => {
                    go(a, names, out, p);
                    out.push_str(" /\\ ");
                    go(b, names, out, p + 1);
                }
                Term::Mult(a, b) => {
                    go(a, names, out, p);
                    out.push('*');
                    go(b, names, out, p + 1);
                }
                Term::Imp(a, b) => {
                    // right-associative: parenthesize a left nested imp
                    go(a, names, out, p + 1);
                    out.push_str(" -> ");
                    go(b, names, out, p);
                }
            }
            if wrap {
                out.push(')');
            }
        }
        let mut out = String::new();
        go(self, names, &mut out, 0);
        out
    }

    /// Evaluates under an assignment of elements to variables.
    pub fn eval(&self, a: &FiniteAlgebra, env: &[usize]) -> Result<usize> {
        match self {
            Term::Var(i) => env
                .get(*i)
                .copied()
                .ok_or_else(|| Error::UnboundVar(format!("x{i}"))),
            Term::One => Ok(a.one()),
            Term::Zero => a
                .bottom()
                .ok_or_else(|| Error::Precondition("constant 0 needs a bounded algebra".into())),
            Term::Join(s, t) => Ok(a.join(s.eval(a, env)?, t.eval(a, env)?)),
            Term::Meet(s, t) => Ok(a.meet(s.eval(a, env)?, t.eval(a, env)?)),
            Term::Mult(s, t) => Ok(a.mult(s.eval(a, env)?, t.eval(a, env)?)),
            Term::Imp(s, t) => Ok(a.imp(s.eval(a, env)?, t.eval(a, env)?)),
        }
    }
}

/// An equation `lhs = rhs` with display names for its variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
    pub name: Option<String>,
    var_names: Vec<String>,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        let arity = lhs.arity().max(rhs.arity());
        Equation { lhs, rhs, name: None, var_names: default_names(arity) }
    }

    pub fn named(name: &str, lhs: Term, rhs: Term) -> Equation {
        let mut eq = Equation::new(lhs, rhs);
        eq.name = Some(name.into());
        eq
    }

    pub fn with_var_names(mut self, names: &[&str]) -> Equation {
        assert!(names.len() >= self.arity());
        self.var_names = names.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Encodes `lhs <= rhs` as `lhs /\ rhs = lhs`.
    pub fn leq(lhs: Term, rhs: Term) -> Equation {
        Equation::new(lhs.clone().meet(rhs), lhs)
    }

    pub fn arity(&self) -> usize {
        self.lhs.arity().max(self.rhs.arity())
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn display(&self) -> String {
        format!("{} = {}", self.lhs.display(&self.var_names), self.rhs.display(&self.var_names))
    }
}

fn default_names(arity: usize) -> Vec<String> {
    if arity <= 3 {
        ["x", "y", "z"].iter().take(arity).map(|s| s.to_string()).collect()
    } else {
        (0..arity).map(|i| format!("x{i}")).collect()
    }
}

/// Exhaustive check; `None` means the equation holds, otherwise the
/// lexicographically first counterexample assignment is returned.
pub fn counterexample(a: &FiniteAlgebra, eq: &Equation) -> Result<Option<Vec<usize>>> {
    let arity = eq.arity();
    let mut env = vec![0usize; arity];
    loop {
        if eq.lhs.eval(a, &env)? != eq.rhs.eval(a, &env)? {
            return Ok(Some(env));
        }
        // odometer with the last variable spinning fastest, so assignments
        // are visited in lexicographic order
        let mut i = arity;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            env[i] += 1;
            if env[i] < a.size() {
                break;
            }
            env[i] = 0;
        }
    }
}

pub fn satisfies(a: &FiniteAlgebra, eq: &Equation) -> bool {
    matches!(counterexample(a, eq), Ok(None))
}

// ---------------------------------------------------------------------------
// kappa translation
// ---------------------------------------------------------------------------

/// The translation sending an axiom `p = 1` of an integral variety to the
/// corresponding axiom of its twist-product variety.
///
/// Every composite clause simply recurses: since each translated image
/// already evaluates below 1 (the leaves are meets with 1 and all
/// operations preserve the cone), meeting the recursive arguments with 1
/// again would not change their value.
pub fn kappa(t: &Term) -> Result<Term> {
    if t.contains_zero() {
        return Err(Error::Precondition("kappa is defined on the zero-free signature".into()));
    }
    Ok(kappa_unchecked(t))
}

fn kappa_unchecked(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::One => t.clone().meet(Term::One),
        Term::Zero => unreachable!("checked by kappa"),
        Term::Join(r, s) => kappa_unchecked(r).join(kappa_unchecked(s)),
        Term::Meet(r, s) => kappa_unchecked(r).meet(kappa_unchecked(s)),
        Term::Mult(r, s) => kappa_unchecked(r).mult(kappa_unchecked(s)),
        Term::Imp(r, s) => kappa_unchecked(r).imp1(kappa_unchecked(s)),
    }
}

/// Applies kappa to an arbitrary equation by first normalizing it to the
/// form `p = 1` (in an integral algebra `s = t` iff `(s->t) /\ (t->s) = 1`).
pub fn kappa_equation(eq: &Equation) -> Result<Equation> {
    let p = if eq.rhs == Term::One {
        eq.lhs.clone()
    } else if eq.lhs == Term::One {
        eq.rhs.clone()
    } else {
        eq.lhs
            .clone()
            .imp(eq.rhs.clone())
            .meet(eq.rhs.clone().imp(eq.lhs.clone()))
    };
    let mut out = Equation::new(kappa(&p)?, Term::One).with_var_names(
        &eq.var_names.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
    );
    out.name = eq.name.as_ref().map(|n| format!("kappa({n})"));
    Ok(out)
}

// ---------------------------------------------------------------------------
// the named equation library
// ---------------------------------------------------------------------------

/// Which index convention to use for `lambda_n`; the family circulates in two variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaVariant {
    /// `/\_{i=0}^{n-1} ((x_{i+1} -> x_1) -> x_i)  <=  \/_{i=1}^{n} x_i`
    Wajsberg,
    /// `/\_{i=0}^{n-1} ((x_{i+1} -> x_i) -> x_i)  <=  \/_{i=0}^{n} x_i`
    Basic,
}

/// The ordinal-sum-length equation family; both variants are
/// available because they differ in indices and bounds.
pub fn lambda_n(n: usize, variant: LambdaVariant) -> Equation {
    assert!(n >= 1);
    let conj = |terms: Vec<Term>| terms.into_iter().reduce(|a, b| a.meet(b)).expect("nonempty");
    let disj = |terms: Vec<Term>| terms.into_iter().reduce(|a, b| a.join(b)).expect("nonempty");
    let (lhs, rhs, tag) = match variant {
        LambdaVariant::Wajsberg => (
            conj((0..n).map(|i| var(i + 1).imp(var(1)).imp(var(i))).collect()),
            disj((1..=n).map(var).collect()),
            "w",
        ),
        LambdaVariant::Basic => (
            conj((0..n).map(|i| var(i + 1).imp(var(i)).imp(var(i))).collect()),
            disj((0..=n).map(var).collect()),
            "b",
        ),
    };
    let mut eq = Equation::leq(lhs, rhs);
    eq.name = Some(format!("lambda{n}{tag}"));
    eq.var_names = (0..=n).map(|i| format!("x{i}")).collect();
    eq
}

/// All named equations; inequalities `s <= t` are encoded as `s /\ t = s`.
pub fn named_equations() -> Vec<Equation> {
    let (x, y, z) = (var(0), var(1), var(2));
    let mut out = vec![
        // prelinearity
        Equation::named("P", x.clone().imp(y.clone()).join(y.clone().imp(x.clone())), Term::One),
        // divisibility
        Equation::named(
            "D",
            x.clone().mult(x.clone().imp(y.clone())),
            y.clone().mult(y.clone().imp(x.clone())),
        ),
        // Tanaka
        Equation::named(
            "T",
            x.clone().imp(y.clone()).imp(y.clone()),
            y.clone().imp(x.clone()).imp(x.clone()),
        ),
        Equation::named(
            "K1",
            x.clone().mult(y.clone()).meet(Term::One),
            x.clone().meet(Term::One).mult(y.clone().meet(Term::One)),
        ),
        Equation::named(
            "K2",
            x.clone()
                .meet(Term::One)
                .imp(y.clone())
                .meet(y.clone().neg().meet(Term::One).imp(x.clone().neg())),
            x.clone().imp(y.clone()),
        ),
        Equation::named("canc", x.clone().imp(x.clone().mult(y.clone())), y.clone()),
        Equation::named(
            "gnpcl",
            x.clone()
                .meet(Term::One)
                .imp(y.clone())
                .join(y.clone().meet(Term::One).imp(x.clone()))
                .meet(Term::One),
            Term::One,
        ),
        // product hoops
        Equation::named(
            "ph",
            y.clone()
                .imp(z.clone())
                .join(x.clone().imp(x.clone().mult(y.clone())).imp(y.clone())),
            Term::One,
        ),
        // consequence of K1
        Equation::named(
            "eqn",
            x.clone().meet(Term::One).imp1(y.clone()),
            x.clone().meet(Term::One).imp1(y.clone().meet(Term::One)),
        ),
        // generalized Boolean algebras over Brouwerian lattices
        Equation::named(
            "gba",
            x.clone().imp(y.clone()).imp(y.clone()),
            y.clone().imp(x.clone()).imp(x.clone()),
        ),
        // splitting equation of the three-element K-lattice
        Equation::named("k3split", x.clone().imp1(x.clone().mult(y.clone())), y.clone().meet(Term::One)),
        // axiomatizes the twist-products of cancellative hoops
        Equation::named(
            "kcaxiom",
            x.clone().meet(Term::One).imp1(x.clone().mult(y.clone())),
            y.clone().meet(Term::One),
        ),
        // splitting equation of the four-element K-lattice, with the
        // outer /\ 1 that any "= 1" claim needs outside integral algebras
        // (1 is not the top of a K-lattice, so bare joins overshoot it)
        Equation::named(
            "k4split",
            x.clone()
                .imp1(x.clone().mult(y.clone()))
                .imp(y.clone().meet(Term::One))
                .join(x.clone().meet(x.clone().neg()).imp1(y.clone().join(y.clone().neg())))
                .meet(Term::One),
            Term::One,
        ),
        // the inequality x /\ ~x <= y \/ ~y separating the three-element
        // K-lattice (which satisfies it) from the four-element one
        Equation::named(
            "k4conj",
            x.clone()
                .meet(x.clone().neg())
                .meet(y.clone().join(y.clone().neg())),
            x.clone().meet(x.clone().neg()),
        ),
        // splitting equation of K(2 + C), both sides capped at 1
        Equation::named(
            "k2ocsplit",
            x.clone().imp1(y.clone()).imp(y.clone().meet(Term::One)).meet(Term::One),
            y.clone().imp1(x.clone()).imp(x.clone().meet(Term::One)).meet(Term::One),
        ),
    ];
    // n-potency x^n = x^(n+1)
    for n in 1..=3u32 {
        out.push(Equation::named(&format!("pot{n}"), x.pow(n), x.pow(n + 1)));
    }
    // n-subcontractivity (x /\ 1)^n = (x /\ 1)^(n+1); n = 1 is the
    // splitting equation of the twist-product of the free one-generated
    // cancellative chain
    for n in 1..=2u32 {
        out.push(Equation::named(
            &format!("subcontr{n}"),
            x.clone().meet(Term::One).pow(n),
            x.clone().meet(Term::One).pow(n + 1),
        ));
    }
    // chain-sum bound over three variables
    let mut cplusc = Equation::leq(
        x.clone()
            .imp(y.clone())
            .imp(y.clone())
            .meet(y.clone().imp(z.clone()).imp(z.clone())),
        x.clone().join(y.clone()).join(z.clone()),
    );
    cplusc.name = Some("cplusc".into());
    out.push(cplusc);
    for n in 1..=2 {
        out.push(lambda_n(n, LambdaVariant::Wajsberg));
        out.push(lambda_n(n, LambdaVariant::Basic));
    }
    out
}

/// Looks up a named equation, case-insensitively.
pub fn named_equation(name: &str) -> Option<Equation> {
    named_equations()
        .into_iter()
        .find(|e| e.name.as_deref().is_some_and(|n| n.eq_ignore_ascii_case(name)))
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

/// Result of parsing: a bare term or an equation, with variable names in
/// order of first appearance.
#[derive(Clone, Debug)]
pub enum Parsed {
    Term(Term, Vec<String>),
    Equation(Equation),
}

pub fn parse(text: &str) -> Result<Parsed> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, vars: Vec::new() };
    let lhs = p.parse_imp()?;
    p.skip_ws();
    if p.peek() == Some(b'=') {
        p.pos += 1;
        let rhs = p.parse_imp()?;
        p.expect_end()?;
        let names: Vec<&str> = p.vars.iter().map(|s| s.as_str()).collect();
        let eq = Equation::new(lhs, rhs).with_var_names(&names);
        return Ok(Parsed::Equation(eq));
    }
    p.expect_end()?;
    Ok(Parsed::Term(lhs, p.vars))
}

/// Parses text that must be an equation.
pub fn parse_equation(text: &str) -> Result<Equation> {
    match parse(text)? {
        Parsed::Equation(eq) => Ok(eq),
        Parsed::Term(_, _) => Err(Error::Syntax {
            offset: text.len(),
            message: "expected an equation `t = t`".into(),
        }),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn starts_with(&mut self, pat: &str) -> bool {
        self.skip_ws();
        self.bytes[self.pos..].starts_with(pat.as_bytes())
    }

    fn eat(&mut self, pat: &str) -> bool {
        if self.starts_with(pat) {
            self.pos += pat.len();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    // imp := or ("->" imp)?   (right-associative, lowest precedence)
    fn parse_imp(&mut self) -> Result<Term> {
        let lhs = self.parse_or()?;
        if self.eat("->") {
            let rhs = self.parse_imp()?;
            return Ok(lhs.imp(rhs));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Term> {
        let mut acc = self.parse_and()?;
        while self.eat("\\/") {
            acc = acc.join(self.parse_and()?);
        }
        Ok(acc)
    }

    fn parse_and(&mut self) -> Result<Term> {
        let mut acc = self.parse_mul()?;
        while self.eat("/\\") {
            acc = acc.meet(self.parse_mul()?);
        }
        Ok(acc)
    }

    fn parse_mul(&mut self) -> Result<Term> {
        let mut acc = self.parse_unary()?;
        while self.eat("*") {
            acc = acc.mult(self.parse_unary()?);
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<Term> {
        if self.eat("~") {
            return Ok(self.parse_unary()?.neg());
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.parse_imp()?;
                if !self.eat(")") {
                    return self.err("expected `)`");
                }
                Ok(t)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos])
                    .expect("ascii slice")
                    .to_string();
                let idx = match self.vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None => {
                        self.vars.push(name);
                        self.vars.len() - 1
                    }
                };
                Ok(Term::Var(idx))
            }
            _ => self.err("expected a term"),
        }
    }
}
