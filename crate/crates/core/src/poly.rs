//! Univariate polynomials over `F_{q^2}`: the U-reciprocal transform,
//! irreducibility, enumeration and the self-U-reciprocal factorization
//! `f = Π p_i^{m_i} · Π (q_j q̃_j)^{n_j}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{FieldElem, FieldSpec, Level};

/// Upper bound on the number of monic candidates scanned by one enumeration.
pub const POLY_ENUM_BOUND: u64 = 4_000_000;

/// A polynomial with coefficients in `F_{q^2}`, constant term first. The
/// coefficient list never ends in zero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

/// Canonical order: degree first, then coefficient indices from the
/// constant term upwards.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    /// Comma-separated canonical coefficient indices, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c.0)?;
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_indices(spec: &FieldSpec, indices: &[u32]) -> Result<Self> {
        let coeffs = indices
            .iter()
            .map(|&i| spec.elem(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Parses the CLI rendering `c0,c1,...`.
    pub fn parse(spec: &FieldSpec, text: &str) -> Result<Self> {
        let indices = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad coefficient index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(spec, &indices)
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElem::ONE)
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![FieldElem::ZERO, FieldElem::ONE])
    }

    /// `x - root`.
    pub fn linear(spec: &FieldSpec, root: FieldElem) -> Self {
        Self::new(vec![spec.neg(root), FieldElem::ONE])
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElem::ONE
    }

    pub fn is_at_level(&self, spec: &FieldSpec, level: Level) -> bool {
        self.coeffs.iter().all(|&c| spec.is_at_level(c, level))
    }

    pub fn add(&self, other: &Self, spec: &FieldSpec) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| spec.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self, spec: &FieldSpec) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| spec.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: FieldElem, spec: &FieldSpec) -> Self {
        Self::new(self.coeffs.iter().map(|&a| spec.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, spec: &FieldSpec) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = spec.add(out[i + j], spec.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut exp: u32, spec: &FieldSpec) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, spec);
            }
            base = base.mul(&base, spec);
            exp >>= 1;
        }
        acc
    }

    /// Quotient and remainder. Panics on division by the zero polynomial.
    pub fn divrem(&self, divisor: &Self, spec: &FieldSpec) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = spec
            .inv(divisor.leading())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = spec.mul(rem[shift + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = spec.sub(rem[shift + i], spec.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self, spec: &FieldSpec) -> Self {
        self.divrem(divisor, spec).1
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, spec: &FieldSpec) -> Self {
        match spec.inv(self.leading()) {
            Some(inv) => self.scale(inv, spec),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self, spec: &FieldSpec) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, spec);
            a = std::mem::replace(&mut b, r);
        }
        a.monic(spec)
    }

    pub fn powmod(&self, mut exp: u64, modulus: &Self, spec: &FieldSpec) -> Self {
        let mut base = self.rem(modulus, spec);
        let mut acc = Self::one().rem(modulus, spec);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, spec).rem(modulus, spec);
            }
            base = base.mul(&base, spec).rem(modulus, spec);
            exp >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: FieldElem, spec: &FieldSpec) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| spec.add(spec.mul(acc, x), c))
    }

    /// Applies the field involution to every coefficient.
    pub fn conj_coeffs(&self, spec: &FieldSpec) -> Self {
        Self::new(self.coeffs.iter().map(|&c| spec.conj(c)).collect())
    }
}

/// `f̃(x) = conj(f(0))^{-1} · x^d · f̄(1/x)`. The result is always monic, and
/// its roots are `ā^{-1}` for the roots `a` of `f`.
pub fn u_reciprocal(spec: &FieldSpec, f: &Poly) -> Result<Poly> {
    if f.is_zero() || f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let scale = spec
        .inv(spec.conj(f.constant_term()))
        .expect("constant term is nonzero");
    let reversed: Vec<FieldElem> = f
        .coeffs()
        .iter()
        .rev()
        .map(|&c| spec.mul(spec.conj(c), scale))
        .collect();
    Ok(Poly::new(reversed))
}

/// `f = f̃` for a monic `f` with nonzero constant term.
pub fn is_self_u_reciprocal(spec: &FieldSpec, f: &Poly) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(u_reciprocal(spec, f)? == *f)
}

/// Irreducibility over the field at `level`, by the Ben-Or test:
/// `gcd(x^{Q^i} - x, f) = 1` for every `1 <= i <= deg f / 2`, `Q` the field
/// order.
pub fn is_irreducible(spec: &FieldSpec, f: &Poly, level: Level) -> Result<bool> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    if !f.is_at_level(spec, level) {
        return Err(Error::NotOverBaseField);
    }
    let order = spec.order(level) as u64;
    let x = Poly::x();
    let mut frob = x.rem(f, spec);
    for _ in 0..d / 2 {
        frob = frob.powmod(order, f, spec);
        if frob.sub(&x, spec).gcd(f, spec).degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which irreducibles [`enumerate_irreducibles`] returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleFilter {
    All,
    SelfUReciprocal,
    NonSelfUReciprocalPairs,
}

/// Result of [`enumerate_irreducibles`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibles {
    Single(Vec<Poly>),
    /// Unordered pairs `{g, g̃}` with `g ≠ g̃`, smaller member first.
    Pairs(Vec<(Poly, Poly)>),
}

impl Irreducibles {
    pub fn len(&self) -> usize {
        match self {
            Self::Single(v) => v.len(),
            Self::Pairs(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_enum_bound(spec: &FieldSpec, degree: usize, level: Level) -> Result<()> {
    let candidates = (spec.order(level) as u128).checked_pow(degree as u32);
    match candidates {
        Some(c) if c <= POLY_ENUM_BOUND as u128 => Ok(()),
        _ => Err(Error::BoundExceeded {
            what: format!("monic polynomials of degree {degree}"),
            projected: candidates.map_or("overflow".into(), |c| c.to_string()),
            bound: POLY_ENUM_BOUND,
        }),
    }
}

/// All monic polynomials of the given degree with coefficients at `level`,
/// in canonical order.
pub fn enumerate_monic(spec: &FieldSpec, degree: usize, level: Level) -> Result<Vec<Poly>> {
    check_enum_bound(spec, degree, level)?;
    let elems = spec.elements(level);
    let base = elems.len();
    let total = base.pow(degree as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; degree];
    for _ in 0..total {
        let mut coeffs: Vec<FieldElem> = digits.iter().map(|&d| elems[d]).collect();
        coeffs.push(FieldElem::ONE);
        out.push(Poly::new(coeffs));
        // the constant term is the most significant digit
        for pos in (0..degree).rev() {
            digits[pos] += 1;
            if digits[pos] < base {
                break;
            }
            digits[pos] = 0;
        }
    }
    Ok(out)
}

/// Monic irreducibles of degree `d` over the field at `level`, canonical order.
pub fn enumerate_irreducibles_at(spec: &FieldSpec, d: usize, level: Level) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    Ok(enumerate_monic(spec, d, level)?
        .into_iter()
        .filter(|f| is_irreducible(spec, f, level).expect("nonconstant, at level"))
        .collect())
}

/// Monic irreducibles of degree `d` over `F_{q^2}` passing `filter`.
/// The two self-U-reciprocity filters skip `x` itself.
pub fn enumerate_irreducibles(
    spec: &FieldSpec,
    d: usize,
    filter: IrreducibleFilter,
) -> Result<Irreducibles> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let level = Level::Extension;
    let candidates = enumerate_monic(spec, d, level)?;
    let irreducible = |f: &Poly| is_irreducible(spec, f, level).expect("nonconstant");
    match filter {
        IrreducibleFilter::All => Ok(Irreducibles::Single(
            candidates.into_iter().filter(|f| irreducible(f)).collect(),
        )),
        IrreducibleFilter::SelfUReciprocal => Ok(Irreducibles::Single(
            candidates
                .into_iter()
                .filter(|f| !f.constant_term().is_zero())
                .filter(|f| u_reciprocal(spec, f).expect("nonzero constant") == *f)
                .filter(|f| irreducible(f))
                .collect(),
        )),
        IrreducibleFilter::NonSelfUReciprocalPairs => {
            let mut pairs = Vec::new();
            for f in candidates {
                if f.constant_term().is_zero() {
                    continue;
                }
                let tilde = u_reciprocal(spec, &f).expect("nonzero constant");
                // each pair is met twice; keep it at its smaller member
                if tilde > f && irreducible(&f) {
                    pairs.push((f, tilde));
                }
            }
            Ok(Irreducibles::Pairs(pairs))
        }
    }
}

/// Factors a monic polynomial into monic irreducibles over the field at
/// `level` by trial division, returning `(factor, multiplicity)` in canonical
/// order of the factors.
pub fn factor(spec: &FieldSpec, f: &Poly, level: Level) -> Result<Vec<(Poly, u32)>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_at_level(spec, level) {
        return Err(Error::NotOverBaseField);
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) > 0 {
        let remaining = rest.degree().unwrap();
        if remaining < 2 * d {
            // no factor of degree < d is left, so what remains is irreducible
            out.push((rest, 1));
            break;
        }
        for g in enumerate_irreducibles_at(spec, d, level)? {
            let mut mult = 0;
            loop {
                let (quot, rem) = rest.divrem(&g, spec);
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// The decomposition `f = Π p_i^{m_i} · Π (q_j q̃_j)^{n_j}` of a
/// self-U-reciprocal polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfURecFactorization {
    /// Irreducible self-U-reciprocal factors with multiplicity.
    pub self_factors: Vec<(Poly, u32)>,
    /// `(q_j, q̃_j, n_j)` with `q_j < q̃_j` in canonical order.
    pub pairs: Vec<(Poly, Poly, u32)>,
}

impl SelfURecFactorization {
    /// Multiplies the factors back together.
    pub fn reassemble(&self, spec: &FieldSpec) -> Poly {
        let mut acc = Poly::one();
        for (p, m) in &self.self_factors {
            acc = acc.mul(&p.pow(*m, spec), spec);
        }
        for (a, b, n) in &self.pairs {
            acc = acc.mul(&a.mul(b, spec).pow(*n, spec), spec);
        }
        acc
    }
}

/// Splits a self-U-reciprocal polynomial into its self-U-reciprocal
/// irreducible factors and its pairs `(q, q̃)`.
pub fn self_urec_factorize(spec: &FieldSpec, f: &Poly) -> Result<SelfURecFactorization> {
    if !is_self_u_reciprocal(spec, f)? {
        return Err(Error::NotSelfUReciprocal);
    }
    let factors = factor(spec, f, Level::Extension)?;
    let mut self_factors = Vec::new();
    let mut pairs = Vec::new();
    for (g, m) in &factors {
        let tilde = u_reciprocal(spec, g)?;
        if tilde == *g {
            self_factors.push((g.clone(), *m));
        } else if tilde > *g {
            let partner = factors.iter().find(|(h, _)| *h == tilde);
            match partner {
                Some((_, n)) if n == m => pairs.push((g.clone(), tilde, *m)),
                _ => return Err(Error::NotSelfUReciprocal),
            }
        }
    }
    Ok(SelfURecFactorization {
        self_factors,
        pairs,
    })
}
