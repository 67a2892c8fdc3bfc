//! Plain-text algebra definitions.
//!
//! A spec file declares generator families, bracket rules with index
//! variables `m` (left) and `n` (right), explicit structure constants, a
//! left-symmetric product, a bilinear form and named 2-cochains:
//!
//! ```text
//! algebra esvla convention super
//! family L integer even
//! family Y half odd
//! rule L[m] L[n] => (n - m) L[m+n]
//! rule Y[m+1/2] Y[n+1/2] => 2 L[m+n+1]
//! cocycle omega1 Y[m+1/2] Y[n+1/2] => 1 when m + n + 1 = 0
//! ```

mod instantiate;
mod parser;
mod render;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Convention, Element, GeneratorId, IndexKind, Parity};
use crate::linalg::{int, Rational};

pub use instantiate::{instantiate, InstantiateError};
pub use parser::{parse, ParseError, ParseErrorKind};
pub use render::render;

/// A value tagged with the source line it came from. Equality ignores the
/// line so that documents compare structurally.
#[derive(Clone, Debug)]
pub struct Located<T> {
    pub line: usize,
    pub value: T,
}

impl<T> Located<T> {
    pub fn new(line: usize, value: T) -> Self {
        Self { line, value }
    }
}

impl<T: PartialEq> PartialEq for Located<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Located<T> {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    M,
    N,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::M => "m",
            Var::N => "n",
        }
    }
}

/// Polynomial in `m` and `n` with rational coefficients, keyed by the
/// exponent pair `(deg_m, deg_n)`. No stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(BTreeMap<(u32, u32), Rational>);

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_monomial((0, 0), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let key = match v {
            Var::M => (1, 0),
            Var::N => (0, 1),
        };
        let mut p = Self::zero();
        p.add_monomial(key, Rational::one());
        p
    }

    pub fn add_monomial(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.0.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree(&self) -> u32 {
        self.0.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::zero()),
            1 => self.0.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (&k, c) in &other.0 {
            out.add_monomial(k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(&k, c)| (k, -c.clone())).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(a1, b1), c1) in &self.0 {
            for (&(a2, b2), c2) in &other.0 {
                out.add_monomial((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (&k, v) in &self.0 {
            out.add_monomial(k, v * c);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut out = Poly::constant(Rational::one());
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, m: &Rational, n: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (&(a, b), c) in &self.0 {
            let mut term = c.clone();
            for _ in 0..a {
                term *= m;
            }
            for _ in 0..b {
                term *= n;
            }
            total += term;
        }
        total
    }

    pub fn coefficient(&self, key: (u32, u32)) -> Rational {
        self.0.get(&key).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Linear condition `poly(m, n) = 0` with `poly` of degree at most one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCondition(pub Poly);

impl LinearCondition {
    pub fn holds(&self, m: &Rational, n: &Rational) -> bool {
        self.0.eval(m, n).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndexPattern {
    /// `var + offset`.
    Var { var: Var, offset: Rational },
    /// A single fixed index; the position variable is bound to it.
    Literal(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenPattern {
    pub family: String,
    pub index: IndexPattern,
}

impl GenPattern {
    /// Value of the pattern variable when `g` matches, given the kind of
    /// `g`'s family. Variables range over the integers, or over the
    /// half-integers for mixed families.
    pub fn bind(&self, g: &GeneratorId, kind: IndexKind) -> Option<Rational> {
        if g.family != self.family {
            return None;
        }
        let index = g.index();
        match &self.index {
            IndexPattern::Literal(v) => (*v == index).then_some(index),
            IndexPattern::Var { offset, .. } => {
                let value = index - offset;
                let ok = match kind {
                    IndexKind::Mixed => (&value * int(2)).is_integer(),
                    _ => value.is_integer(),
                };
                ok.then_some(value)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleTerm {
    pub coefficient: Poly,
    pub family: String,
    /// Result index is `m + n + offset`.
    pub offset: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BracketRule {
    pub left: GenPattern,
    pub right: GenPattern,
    /// Empty means the bracket is zero.
    pub terms: Vec<RuleTerm>,
    pub when: Option<LinearCondition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyDecl {
    pub symbol: String,
    pub kind: IndexKind,
    pub parity: Parity,
}

/// Explicit structure constant line: `[left, right] = value` (or the
/// product `left . right = value`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDecl {
    pub left: GeneratorId,
    pub right: GeneratorId,
    pub value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormDecl {
    /// `+1` at `(i, j)` for `i < j`, `i + j = 2n + 1`, skew completion.
    Standard,
    Entry {
        left: GeneratorId,
        right: GeneratorId,
        value: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CocycleDecl {
    pub name: String,
    pub left: GenPattern,
    pub right: GenPattern,
    pub value: Poly,
    pub when: Option<LinearCondition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpecDoc {
    pub name: String,
    pub convention: Convention,
    pub families: Vec<Located<FamilyDecl>>,
    pub basis: Vec<Located<GeneratorId>>,
    pub rules: Vec<Located<BracketRule>>,
    pub entries: Vec<Located<EntryDecl>>,
    pub products: Vec<Located<EntryDecl>>,
    pub form: Vec<Located<FormDecl>>,
    pub cocycles: Vec<Located<CocycleDecl>>,
}

impl AlgebraSpecDoc {
    pub fn new(name: impl Into<String>, convention: Convention) -> Self {
        Self {
            name: name.into(),
            convention,
            families: Vec::new(),
            basis: Vec::new(),
            rules: Vec::new(),
            entries: Vec::new(),
            products: Vec::new(),
            form: Vec::new(),
            cocycles: Vec::new(),
        }
    }

    pub fn family(&self, symbol: &str) -> Option<&FamilyDecl> {
        self.families
            .iter()
            .map(|f| &f.value)
            .find(|f| f.symbol == symbol)
    }

    pub fn family_mut(&mut self, symbol: &str) -> Option<&mut FamilyDecl> {
        self.families
            .iter_mut()
            .map(|f| &mut f.value)
            .find(|f| f.symbol == symbol)
    }

    /// Names of the declared cochains, in first-appearance order.
    pub fn cocycle_names(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for c in &self.cocycles {
            if !out.contains(&c.value.name) {
                out.push(c.value.name.clone());
            }
        }
        out
    }

    pub fn cocycle_lines(&self, name: &str) -> Vec<&Located<CocycleDecl>> {
        self.cocycles
            .iter()
            .filter(|c| c.value.name == name)
            .collect()
    }

    /// True when the document describes a left-symmetric product.
    pub fn has_product_data(&self) -> bool {
        !self.products.is_empty() || !self.form.is_empty()
    }
}

impl fmt::Display for AlgebraSpecDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

#[cfg(test)]
mod tests;
