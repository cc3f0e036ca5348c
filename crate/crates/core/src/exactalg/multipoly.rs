//! Sparse multivariate polynomials over the rationals.
//!
//! The variable set is fixed: `t`, `u`, `s` (with `q = s^2`) and the formal
//! sequence symbols `k2, k4, ..., k14`. Terms are kept in a `BTreeMap` keyed
//! by monomial in graded lexicographic order, which makes display and
//! serialization canonical. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Number of variables in the fixed polynomial universe.
pub const NVARS: usize = 10;

/// Display names, indexed by variable number.
pub const VAR_NAMES: [&str; NVARS] = ["t", "u", "s", "k2", "k4", "k6", "k8", "k10", "k12", "k14"];

/// A variable of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// First transform parameter.
    T,
    /// Second transform parameter.
    U,
    /// Square root of the deformation parameter: `q = s^2`.
    S,
    /// Formal sequence symbol `k{2l}` (cumulant, moment or coefficient slot).
    Seq(u8),
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::T => 0,
            Var::U => 1,
            Var::S => 2,
            Var::Seq(l) => {
                assert!((1..=7).contains(&l), "sequence symbol k{} out of range", 2 * l);
                2 + l as usize
            }
        }
    }

    pub fn from_index(i: usize) -> Var {
        match i {
            0 => Var::T,
            1 => Var::U,
            2 => Var::S,
            3..=9 => Var::Seq((i - 2) as u8),
            _ => panic!("variable index {i} out of range"),
        }
    }

    /// The symbol `k{2l}` holding the `l`-th entry of a formal sequence.
    pub fn seq(l: usize) -> Var {
        Var::Seq(l as u8)
    }

    pub fn name(self) -> &'static str {
        VAR_NAMES[self.index()]
    }

    pub fn by_name(name: &str) -> Option<Var> {
        VAR_NAMES
            .iter()
            .position(|n| *n == name)
            .map(Var::from_index)
    }
}

/// Exponent vector with graded lexicographic ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: u16) -> Mono {
        let mut m = [0u16; NVARS];
        m[v.index()] = e;
        Mono(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for i in 0..NVARS {
            m[i] += other.0[i];
        }
        Mono(m)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_into(&self, other: &Mono) -> Mono {
        let mut m = other.0;
        for i in 0..NVARS {
            m[i] -= self.0[i];
        }
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in the fixed variable set, with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::monomial(Mono::var(v, 1), Rational::one())
    }

    pub fn var_pow(v: Var, e: u16) -> MultiPoly {
        MultiPoly::monomial(Mono::var(v, e), Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(list: impl IntoIterator<Item = (Mono, Rational)>) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (m, c) in list {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Mono::ONE).cloned();
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        let i = v.index();
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = MultiPoly::zero();
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &MultiPoly) -> Option<MultiPoly> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&(Rational::one() / c)));
        }
        let (lm, lc) = other.leading_term().unwrap();
        let lm = *lm;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return None;
            }
            let qm = lm.quotient_into(rm);
            let qc = rc / &lc;
            let t = MultiPoly::monomial(qm, qc);
            rem = rem.sub(&t.mul(other));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Evaluates at a full rational point. `point[i]` substitutes variable `i`.
    pub fn eval(&self, point: &[Rational; NVARS]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut term = c.clone();
            for i in 0..NVARS {
                for _ in 0..m.0[i] {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes rational values for a subset of the variables.
    pub fn subst(&self, assignments: &[(Var, Rational)]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms.iter() {
            let mut coeff = c.clone();
            let mut mono = m.0;
            for (v, val) in assignments {
                let i = v.index();
                for _ in 0..mono[i] {
                    coeff *= val;
                }
                mono[i] = 0;
            }
            out.add_term(Mono(mono), coeff);
        }
        out
    }

    /// Replaces `s` by `1/s`, returning `(p_tilde, e)` with
    /// `p(1/s) = p_tilde(s) / s^e` and `p_tilde` a polynomial.
    pub fn flip_s(&self) -> (MultiPoly, u16) {
        let e = self.degree_in(Var::S);
        let si = Var::S.index();
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms.iter() {
            let mut mono = m.0;
            mono[si] = e - mono[si];
            out.add_term(Mono(mono), c.clone());
        }
        (out, e)
    }

    /// Divides every term by the content, returning an integer-coefficient
    /// polynomial with coprime coefficients and positive leading coefficient,
    /// together with the removed rational factor.
    pub fn primitive_part(&self) -> (MultiPoly, Rational) {
        if self.is_zero() {
            return (MultiPoly::zero(), Rational::one());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut factor = Rational::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        let inv = Rational::one() / factor.clone();
        (self.scale(&inv), factor)
    }

    /// Monic rescale: leading coefficient becomes 1. Zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&(Rational::one() / lc))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(super::rational::rat_to_string(&abs));
            }
            for v in 0..NVARS {
                match m.0[v] {
                    0 => {}
                    1 => parts.push(VAR_NAMES[v].to_string()),
                    e => parts.push(format!("{}^{}", VAR_NAMES[v], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Polynomial gcd (primitive PRS on a recursive univariate view).
// ---------------------------------------------------------------------------

/// Coefficient vector of `p` seen as univariate in `v`; index = degree in `v`.
fn to_univariate(p: &MultiPoly, v: Var) -> Vec<MultiPoly> {
    let i = v.index();
    let deg = p.degree_in(v) as usize;
    let mut coeffs = vec![MultiPoly::zero(); deg + 1];
    for (m, c) in p.terms.iter() {
        let e = m.0[i] as usize;
        let mut rest = m.0;
        rest[i] = 0;
        coeffs[e].add_term(Mono(rest), c.clone());
    }
    coeffs
}

fn from_univariate(coeffs: &[MultiPoly], v: Var) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (e, c) in coeffs.iter().enumerate() {
        let m = Mono::var(v, e as u16);
        for (mono, coeff) in c.terms.iter() {
            out.add_term(mono.mul(&m), coeff.clone());
        }
    }
    out
}

fn uni_trim(c: &mut Vec<MultiPoly>) {
    while c.last().map(|x| x.is_zero()).unwrap_or(false) {
        c.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials in one main
/// variable: `lc(b)^(deg a - deg b + 1) * a = q*b + r` with `deg r < deg b`.
fn uni_pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<MultiPoly> = a.to_vec();
    uni_trim(&mut r);
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        // r = lb * r - lead * x^(dr-db) * b
        for x in r.iter_mut() {
            *x = x.mul(&lb);
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            let t = lead.mul(bj);
            r[shift + j] = r[shift + j].sub(&t);
        }
        uni_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// gcd of the coefficient list (the content with respect to the main variable).
fn content_of(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Greatest common divisor in `Q[t,u,s,k..]`, normalized monic in graded
/// lexicographic order (`gcd(0,0) = 0`). Primitive PRS with recursion on the
/// variable of smallest degree.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    // Fast path: both monomials.
    if a.num_terms() == 1 && b.num_terms() == 1 {
        let (ma, _) = a.leading_term().unwrap();
        let (mb, _) = b.leading_term().unwrap();
        let mut m = [0u16; NVARS];
        for i in 0..NVARS {
            m[i] = ma.0[i].min(mb.0[i]);
        }
        return MultiPoly::monomial(Mono(m), Rational::one());
    }
    // Pick the main variable: present in both if possible, smallest max-degree.
    let mut main: Option<(Var, u16)> = None;
    let mut fallback: Option<Var> = None;
    for i in 0..NVARS {
        let v = Var::from_index(i);
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da > 0 && db > 0 {
            let key = da.max(db);
            if main.map(|(_, k)| key < k).unwrap_or(true) {
                main = Some((v, key));
            }
        } else if (da > 0 || db > 0) && fallback.is_none() {
            fallback = Some(v);
        }
    }
    let v = match main {
        Some((v, _)) => v,
        None => {
            // No shared variable: gcd divides both contents taken over the
            // variable present in only one of them.
            let v = fallback.expect("nonconstant polynomials must use a variable");
            let (with_v, without_v) = if a.degree_in(v) > 0 { (a, b) } else { (b, a) };
            let cont = content_of(&to_univariate(with_v, v));
            return poly_gcd(&cont, without_v);
        }
    };

    let ua = to_univariate(a, v);
    let ub = to_univariate(b, v);
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let cg = poly_gcd(&ca, &cb);

    let mut pa: Vec<MultiPoly> = ua
        .iter()
        .map(|c| c.div_exact(&ca).expect("content divides"))
        .collect();
    let mut pb: Vec<MultiPoly> = ub
        .iter()
        .map(|c| c.div_exact(&cb).expect("content divides"))
        .collect();
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        if pb.is_empty() {
            let pp = from_univariate(&pa, v);
            let cont = content_of(&pa);
            let pp = pp.div_exact(&cont).expect("content divides");
            return cg.mul(&pp).monic();
        }
        if pb.len() == 1 {
            // Degree 0 in the main variable: primitive parts are coprime.
            return cg.monic();
        }
        let mut r = uni_pseudo_rem(&pa, &pb);
        if !r.is_empty() {
            let cont = content_of(&r);
            for x in r.iter_mut() {
                *x = x.div_exact(&cont).expect("content divides");
            }
        }
        pa = pb;
        pb = r;
    }
}
