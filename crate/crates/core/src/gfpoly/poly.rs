use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{FpElem, Monomial, MonomialOrder, OrderKind, PolyError, PrimeField};

/// Ring context: coefficient field, variable names and monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '\'')
}

impl Ring {
    /// A ring over `F_p` with the default grevlex order.
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Arc<Ring>, PolyError> {
        Self::with_order(p, vars, MonomialOrder::grevlex(vars.len()))
    }

    pub fn with_order<S: AsRef<str>>(
        p: u64,
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<Ring>, PolyError> {
        let field = PrimeField::new(p)?;
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(PolyError::InvalidVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        if order.nvars() != vars.len() {
            return Err(PolyError::InvalidPrecedence(order.precedence().to_vec()));
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    /// Same field and variables under a different order kind.
    pub fn reordered(&self, kind: OrderKind) -> Arc<Ring> {
        Arc::new(Ring {
            field: self.field,
            vars: self.vars.clone(),
            order: MonomialOrder::new(kind, self.vars.len()),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u64 {
        self.field.modulus()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

/// Sparse polynomial over `F_p`.
///
/// Terms are kept sorted in descending monomial order with no zero coefficients,
/// so structural equality is polynomial equality.
#[derive(Clone, Debug)]
pub struct PolyFp {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, u64)>,
}

impl PartialEq for PolyFp {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.ring == *other.ring
    }
}

impl Eq for PolyFp {}

impl PolyFp {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        PolyFp {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        Self::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn term(ring: &Arc<Ring>, c: i64, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity differs from ring");
        let c = ring.field.reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        PolyFp {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self, PolyError> {
        let i = ring.var_index(name)?;
        Ok(Self::term(ring, 1, Monomial::var(ring.nvars(), i)))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let f = ring.field;
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity differs from ring");
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, f.reduce(c));
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, acc: HashMap<Monomial, u64>) -> Self {
        let mut terms: Vec<(Monomial, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.order.compare(&b.0, &a.0));
        PolyFp {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms must already be sorted descending under `ring`'s order with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, u64)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0 && *c < ring.characteristic()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.compare(&w[0].0, &w[1].0) == std::cmp::Ordering::Greater));
        PolyFp {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field
    }

    /// Terms in descending monomial order; coefficients lie in `[1, p)`.
    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// The polynomial without its leading term.
    pub fn tail(&self) -> PolyFp {
        PolyFp {
            ring: self.ring.clone(),
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    pub fn leading_coeff(&self) -> u64 {
        self.terms.first().map_or(0, |(_, c)| *c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn constant_term(&self) -> u64 {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map_or(0, |(_, c)| *c)
    }

    pub fn coeff(&self, m: &Monomial) -> FpElem {
        let c = self
            .terms
            .iter()
            .find(|(t, _)| t == m)
            .map_or(0, |(_, c)| *c);
        self.field().elem(c as i64)
    }

    fn check_same_ring(&self, other: &PolyFp) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    fn merge(&self, other: &PolyFp, negate_other: bool) -> PolyFp {
        let f = self.ring.field;
        let ord = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: u64| if negate_other { f.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ord.compare(ma, mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), *ca));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), sign(*cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(*ca, sign(*cb));
                    if c != 0 {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sign(*c))));
        PolyFp {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &PolyFp) -> Result<PolyFp, PolyError> {
        self.check_same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &PolyFp) -> Result<PolyFp, PolyError> {
        self.check_same_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &PolyFp) -> Result<PolyFp, PolyError> {
        self.check_same_ring(other)?;
        let f = self.ring.field;
        let mut acc: HashMap<Monomial, u64> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// Multiplies by the term `c * m`. Order is preserved, so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> PolyFp {
        let f = self.ring.field;
        let c = c % f.modulus();
        if c == 0 {
            return PolyFp::zero(&self.ring);
        }
        PolyFp {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, d)| (t.mul(m), f.mul(*d, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> PolyFp {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    /// Scales so the leading coefficient is 1. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> PolyFp {
        match self.ring.field.inv(self.leading_coeff()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> PolyFp {
        let mut acc = PolyFp::one(&self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative; the exponent is multiplied in as an element of `F_p`.
    pub fn partial(&self, var: &str) -> Result<PolyFp, PolyError> {
        let i = self.ring.var_index(var)?;
        Ok(self.partial_index(i))
    }

    pub fn partial_index(&self, i: usize) -> PolyFp {
        let f = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponents()[i];
                if e == 0 {
                    return None;
                }
                let c = f.mul(*c, e as u64 % f.modulus());
                if c == 0 {
                    return None;
                }
                let mut ex = m.exponents().to_vec();
                ex[i] -= 1;
                Some((Monomial::from_exponents(ex), c))
            })
            .collect();
        // m1 > m2 implies m1/v > m2/v, so the surviving terms stay sorted.
        PolyFp {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// All partial derivatives, in ring variable order.
    pub fn gradient(&self) -> Vec<PolyFp> {
        (0..self.ring.nvars()).map(|i| self.partial_index(i)).collect()
    }

    /// Simultaneous substitution `var -> image`. Variables that do not occur in `self`
    /// may be left unassigned; all images must share one ring.
    pub fn substitute<K: AsRef<str>>(
        &self,
        assignment: &HashMap<K, PolyFp>,
    ) -> Result<PolyFp, PolyError> {
        let mut images: Vec<Option<&PolyFp>> = vec![None; self.ring.nvars()];
        for (k, v) in assignment {
            let i = self.ring.var_index(k.as_ref())?;
            images[i] = Some(v);
        }
        self.substitute_indexed(&images)
    }

    /// Substitution with images given per variable index.
    pub fn substitute_indexed(&self, images: &[Option<&PolyFp>]) -> Result<PolyFp, PolyError> {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .iter()
            .flatten()
            .next()
            .map(|p| p.ring.clone())
            .ok_or(PolyError::EmptyAssignment)?;
        for img in images.iter().flatten() {
            if *img.ring != *target {
                return Err(PolyError::ContextMismatch);
            }
        }
        if target.characteristic() != self.ring.characteristic() {
            return Err(PolyError::ContextMismatch);
        }
        for (i, img) in images.iter().enumerate() {
            if img.is_none() && self.terms.iter().any(|(m, _)| m.exponents()[i] > 0) {
                return Err(PolyError::MissingAssignment(self.ring.vars[i].clone()));
            }
        }
        // Cached powers of each image.
        let mut powers: Vec<Vec<PolyFp>> = vec![vec![PolyFp::one(&target)]; images.len()];
        let mut result = PolyFp::zero(&target);
        for (m, c) in &self.terms {
            let mut t = PolyFp::constant(&target, *c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].expect("checked above");
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * img;
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            result = &result + &t;
        }
        Ok(result)
    }

    /// Re-expresses this polynomial in a ring with identical field and variables
    /// but a possibly different monomial order.
    pub fn in_ring(&self, target: &Arc<Ring>) -> Result<PolyFp, PolyError> {
        if target.field != self.ring.field || target.vars != self.ring.vars {
            return Err(PolyError::ContextMismatch);
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.order.compare(&b.0, &a.0));
        Ok(PolyFp {
            ring: target.clone(),
            terms,
        })
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a PolyFp> for &'a PolyFp {
            type Output = PolyFp;

            /// # Panics
            /// If the operands live in different rings; use the `checked_*` form to get an error.
            fn $method(self, rhs: &'a PolyFp) -> PolyFp {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }

        impl $trait<PolyFp> for PolyFp {
            type Output = PolyFp;

            fn $method(self, rhs: PolyFp) -> PolyFp {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &PolyFp {
    type Output = PolyFp;

    fn neg(self) -> PolyFp {
        let f = self.ring.field;
        PolyFp {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }
}

impl Neg for PolyFp {
    type Output = PolyFp;

    fn neg(self) -> PolyFp {
        -&self
    }
}
