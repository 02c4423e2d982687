use super::{rational_to_f64, Rational, ScalarError};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Ring generators. The derived order (parameters, coordinates, sinh, cosh)
/// is the monomial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Named constant with zero derivative (`c1`, `k`, `t`, ...).
    Param(String),
    /// Coordinate `x_i`, 1-based.
    Coord(u32),
    /// `sinh(x_i)`.
    Sinh(u32),
    /// `cosh(x_i)`; every normal-form monomial has degree at most one in it.
    Cosh(u32),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Param(p) => write!(f, "{p}"),
            Symbol::Coord(i) => write!(f, "x{i}"),
            Symbol::Sinh(i) => write!(f, "sinh(x{i})"),
            Symbol::Cosh(i) => write!(f, "cosh(x{i})"),
        }
    }
}

/// Power product with strictly positive exponents, sorted by symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn of(sym: Symbol, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(sym, exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree_in(&self, sym: &Symbol) -> u32 {
        self.0
            .iter()
            .find(|(s, _)| s == sym)
            .map_or(0, |(_, e)| *e)
    }

    fn with_exponent(&self, sym: &Symbol, exp: u32) -> Self {
        let mut factors: Vec<(Symbol, u32)> =
            self.0.iter().filter(|(s, _)| s != sym).cloned().collect();
        if exp > 0 {
            factors.push((sym.clone(), exp));
            factors.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Monomial(factors)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (&self.0[i], &other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Element of `Q[params, x_i, sinh x_i, cosh x_i] / (cosh² x_i − sinh² x_i − 1)`
/// in normal form: no zero coefficients, cosh-degree ≤ 1 in every monomial.
/// Structural equality is ring equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HypExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl HypExpr {
    pub fn zero() -> Self {
        HypExpr::default()
    }

    pub fn one() -> Self {
        HypExpr::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        let mut e = HypExpr::zero();
        e.accumulate(Monomial::one(), r);
        e
    }

    pub fn int(n: i64) -> Self {
        HypExpr::constant(super::rat(n))
    }

    pub fn symbol(sym: Symbol) -> Self {
        let mut e = HypExpr::zero();
        e.accumulate(Monomial::of(sym, 1), Rational::one());
        e
    }

    pub fn coord(i: u32) -> Self {
        HypExpr::symbol(Symbol::Coord(i))
    }

    pub fn param(name: &str) -> Self {
        HypExpr::symbol(Symbol::Param(name.to_string()))
    }

    pub fn sinh(i: u32) -> Self {
        HypExpr::symbol(Symbol::Sinh(i))
    }

    pub fn cosh(i: u32) -> Self {
        HypExpr::symbol(Symbol::Cosh(i))
    }

    /// Builds `coef · mono`, applying `cosh² → 1 + sinh²` as needed.
    pub fn term(mono: Monomial, coef: Rational) -> Self {
        let mut e = HypExpr::zero();
        e.add_reduced(mono, coef);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value when the expression is a rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&Monomial::one())
                .cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    /// True when no coordinate or hyperbolic symbol occurs.
    pub fn is_parameter_only(&self) -> bool {
        self.symbols().iter().all(|s| matches!(s, Symbol::Param(_)))
    }

    /// Greatest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return HypExpr::zero();
        }
        HypExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * r))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = HypExpr::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn accumulate(&mut self, mono: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_reduced(&mut self, mono: Monomial, coef: Rational) {
        let excess = mono
            .0
            .iter()
            .find(|(s, e)| matches!(s, Symbol::Cosh(_)) && *e >= 2)
            .cloned();
        match excess {
            None => self.accumulate(mono, coef),
            Some((cosh, e)) => {
                let Symbol::Cosh(i) = cosh else { unreachable!() };
                let lowered = mono.with_exponent(&cosh, e - 2);
                let shifted = lowered.times(&Monomial::of(Symbol::Sinh(i), 2));
                self.add_reduced(lowered, coef.clone());
                self.add_reduced(shifted, coef);
            }
        }
    }

    /// `∂/∂x_i`. Parameters and other coordinates are constants.
    pub fn partial(&self, coord: u32) -> Self {
        let mut out = HypExpr::zero();
        for (mono, coef) in &self.terms {
            for (pos, (sym, exp)) in mono.0.iter().enumerate() {
                let factor_derivative = match sym {
                    Symbol::Coord(i) if *i == coord => HypExpr::one(),
                    Symbol::Sinh(i) if *i == coord => HypExpr::cosh(coord),
                    Symbol::Cosh(i) if *i == coord => HypExpr::sinh(coord),
                    _ => continue,
                };
                // d(s^e) = e s^(e-1) ds
                let mut rest = mono.clone();
                rest.0[pos].1 -= 1;
                if rest.0[pos].1 == 0 {
                    rest.0.remove(pos);
                }
                let scaled = coef * Rational::from_integer((*exp).into());
                out = &out + &(&HypExpr::term(rest, scaled) * &factor_derivative);
            }
        }
        out
    }

    /// Partial derivative by symbol; only coordinates are differentiable.
    pub fn partial_by(&self, sym: &Symbol) -> Result<Self, ScalarError> {
        match sym {
            Symbol::Coord(i) => Ok(self.partial(*i)),
            other => Err(ScalarError::NotACoordinate(other.to_string())),
        }
    }

    /// Approximate value. Keys are symbol names (`x3`, `c1`); hyperbolic
    /// symbols read their coordinate. Debug path only.
    pub fn evaluate(&self, assignment: &BTreeMap<String, Rational>) -> Result<f64, ScalarError> {
        let lookup = |name: String| {
            assignment
                .get(&name)
                .map(rational_to_f64)
                .ok_or(ScalarError::MissingAssignment(name))
        };
        let mut total = 0.0;
        for (mono, coef) in &self.terms {
            let mut value = rational_to_f64(coef);
            for (sym, exp) in &mono.0 {
                let base = match sym {
                    Symbol::Param(p) => lookup(p.clone())?,
                    Symbol::Coord(i) => lookup(format!("x{i}"))?,
                    Symbol::Sinh(i) => lookup(format!("x{i}"))?.sinh(),
                    Symbol::Cosh(i) => lookup(format!("x{i}"))?.cosh(),
                };
                value *= base.powi(*exp as i32);
            }
            total += value;
        }
        Ok(total)
    }

    /// Substitutes rational values for parameters, leaving other symbols.
    pub fn substitute_params(&self, values: &BTreeMap<String, Rational>) -> Self {
        let mut out = HypExpr::zero();
        for (mono, coef) in &self.terms {
            let mut c = coef.clone();
            let mut kept = Vec::new();
            for (sym, exp) in &mono.0 {
                match sym {
                    Symbol::Param(p) if values.contains_key(p) => {
                        c *= num_traits::pow(values[p].clone(), *exp as usize);
                    }
                    _ => kept.push((sym.clone(), *exp)),
                }
            }
            out.add_reduced(Monomial(kept), c);
        }
        out
    }
}

impl From<Rational> for HypExpr {
    fn from(r: Rational) -> Self {
        HypExpr::constant(r)
    }
}

impl fmt::Display for HypExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mono, coef)) in self.terms.iter().rev().enumerate() {
            let negative = coef.is_negative();
            let magnitude = coef.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{magnitude}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &HypExpr {
    type Output = HypExpr;
    fn add(self, rhs: &HypExpr) -> HypExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HypExpr {
    type Output = HypExpr;
    fn sub(self, rhs: &HypExpr) -> HypExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &HypExpr {
    type Output = HypExpr;
    fn mul(self, rhs: &HypExpr) -> HypExpr {
        let mut out = HypExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_reduced(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &HypExpr {
    type Output = HypExpr;
    fn neg(self) -> HypExpr {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for HypExpr {
            type Output = HypExpr;
            fn $m(self, rhs: HypExpr) -> HypExpr { (&self).$m(&rhs) }
        }
        impl $tr<&HypExpr> for HypExpr {
            type Output = HypExpr;
            fn $m(self, rhs: &HypExpr) -> HypExpr { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for HypExpr {
    type Output = HypExpr;
    fn neg(self) -> HypExpr {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn s3() -> HypExpr {
        HypExpr::sinh(3)
    }
    fn c3() -> HypExpr {
        HypExpr::cosh(3)
    }

    #[test]
    fn hyperbolic_identity_reduces_to_one() {
        let e = &(&c3() * &c3()) - &(&s3() * &s3());
        assert_eq!(e, HypExpr::one());
        let f = &(&c3() + &s3()) * &(&c3() - &s3());
        assert_eq!(f, HypExpr::one());
    }

    #[test]
    fn cosh_degree_stays_below_two() {
        let e = c3().pow(5);
        for (m, _) in e.terms() {
            assert!(m.degree_in(&Symbol::Cosh(3)) <= 1);
        }
        // cosh^5 = cosh (1 + s^2)^2
        let expected = &c3() * &(&HypExpr::one() + &(&s3() * &s3())).pow(2);
        assert_eq!(e, expected);
    }

    #[test]
    fn zero_terms_vanish() {
        let e = &(&HypExpr::param("c1") * &HypExpr::coord(1)) * &c3();
        let z = &HypExpr::int(0) * &HypExpr::coord(2);
        let sum = &e + &z;
        assert_eq!(sum.len(), 1);
        assert!((&e - &e).is_zero());
    }

    #[test]
    fn derivative_of_sinh_times_coordinate() {
        let e = &s3() * &HypExpr::coord(1);
        assert_eq!(e.partial(3), &c3() * &HypExpr::coord(1));
        assert!((&HypExpr::param("c2") * &HypExpr::coord(2)).partial(1).is_zero());
    }

    #[test]
    fn derivative_of_cosh_double_angle() {
        // cosh 2x = 1 + 2 sinh² x, derivative 2 sinh 2x = 4 sinh x cosh x
        let e = &HypExpr::one() + &(&s3() * &s3()).scale(&rat(2));
        let expected = (&s3() * &c3()).scale(&rat(4));
        assert_eq!(e.partial(3), expected);
    }

    #[test]
    fn only_coordinates_are_differentiable() {
        let e = HypExpr::coord(1);
        assert!(e.partial_by(&Symbol::Param("c1".into())).is_err());
        assert!(e.partial_by(&Symbol::Sinh(1)).is_err());
        assert_eq!(e.partial_by(&Symbol::Coord(1)).unwrap(), HypExpr::one());
    }

    #[test]
    fn evaluates_hyperbolics() {
        let mut a = BTreeMap::new();
        a.insert("x3".to_string(), rat(0));
        assert_eq!(c3().evaluate(&a).unwrap(), 1.0);
        assert_eq!(s3().evaluate(&a).unwrap(), 0.0);
        a.insert("x3".to_string(), rat(1));
        let cosh2 = &HypExpr::one() + &(&s3() * &s3()).scale(&rat(2));
        assert!((cosh2.evaluate(&a).unwrap() - 2f64.cosh()).abs() < 1e-12);
        assert!(matches!(
            HypExpr::coord(1).evaluate(&a),
            Err(ScalarError::MissingAssignment(n)) if n == "x1"
        ));
    }

    #[test]
    fn constants_and_parameter_detection() {
        assert_eq!(HypExpr::constant(ratio(1, 2)).as_constant(), Some(ratio(1, 2)));
        assert_eq!(HypExpr::zero().as_constant(), Some(rat(0)));
        assert!(HypExpr::param("c1").is_parameter_only());
        assert!(!HypExpr::coord(1).is_parameter_only());
        assert!(HypExpr::param("c1").as_constant().is_none());
    }

    #[test]
    fn display_is_stable() {
        let e = &(&HypExpr::param("c1").scale(&rat(-2)) + &HypExpr::int(3)) + &(&s3() * &s3());
        assert_eq!(e.to_string(), "sinh(x3)^2 - 2*c1 + 3");
        assert_eq!(HypExpr::constant(ratio(-1, 2)).to_string(), "-1/2");
    }

    #[test]
    fn parameter_substitution() {
        let e = &HypExpr::param("c1") * &c3();
        let mut v = BTreeMap::new();
        v.insert("c1".to_string(), rat(2));
        assert_eq!(e.substitute_params(&v), c3().scale(&rat(2)));
    }
}
