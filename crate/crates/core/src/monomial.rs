//! Monomials, monomial ideals and monomial primes in `K[x1, ..., xn]`.
//!
//! Variables are indexed from 0 internally and printed 1-based (`x1` is index 0).
//! Every [`MonomialIdeal`] stores its minimal generating set `G(I)` in canonical
//! order: ascending degree, and within one degree descending reverse
//! lexicographic order with `x1 > x2 > ... > xn`. Two ideals are equal exactly
//! when their canonical forms are equal.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial `x1^e1 ... xn^en` given by its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_{i+1}` in a ring with `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Product of the listed variables, each to the first power.
    pub fn squarefree(n: usize, vars: &[usize]) -> Self {
        let mut exps = vec![0; n];
        for &v in vars {
            exps[v] = 1;
        }
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    pub fn support_len(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Returns `Some(i)` when the monomial is the single variable `x_{i+1}`.
    pub fn as_variable(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        check_len(self.n(), other.n())?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn checked_pow(&self, k: u32) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// `self / gcd(self, u)`: the generator of the principal colon `(self) : u`.
    pub fn colon(&self, u: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&u.exps)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    /// Exact quotient, `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(self.colon(other))
        } else {
            None
        }
    }

    /// Reverse lexicographic comparison with `x1 > ... > xn`: the monomial with the
    /// smaller exponent at the last differing variable is the larger one.
    pub fn revlex_cmp(&self, other: &Monomial) -> Ordering {
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }

    /// Lexicographic comparison with `x1 > ... > xn`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    /// Keeps only the listed coordinates, re-indexed in the order given.
    pub fn restrict(&self, vars: &[usize]) -> Monomial {
        Monomial {
            exps: vars.iter().map(|&v| self.exps[v]).collect(),
        }
    }

    pub(crate) fn exps_mut(&mut self) -> &mut Vec<u32> {
        &mut self.exps
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Canonical generator order: ascending degree, then descending reverse lexicographic.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.revlex_cmp(a))
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// A prime ideal generated by a set of variables.
///
/// The canonical parameter is the generating set. The other common convention
/// names a prime by the variables it omits; [`MonomialPrime::omitting`] converts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonomialPrime {
    vars: Vec<usize>,
}

impl MonomialPrime {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        MonomialPrime { vars }
    }

    /// The graded maximal ideal `(x1, ..., xn)`.
    pub fn maximal(n: usize) -> Self {
        MonomialPrime {
            vars: (0..n).collect(),
        }
    }

    /// The prime generated by every variable whose index is not in `omitted`.
    pub fn omitting(n: usize, omitted: &[usize]) -> Self {
        MonomialPrime {
            vars: (0..n).filter(|i| !omitted.contains(i)).collect(),
        }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn contains(&self, var: usize) -> bool {
        self.vars.binary_search(&var).is_ok()
    }

    pub fn is_maximal_in(&self, n: usize) -> bool {
        self.vars.len() == n && self.vars.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_disjoint(&self, other: &MonomialPrime) -> bool {
        self.vars.iter().all(|v| !other.contains(*v))
    }

    pub fn to_ideal(&self, n: usize) -> Result<MonomialIdeal> {
        MonomialIdeal::new(n, self.vars.iter().map(|&v| Monomial::var(n, v)))
    }

    /// 1-based variable indices, the form used in text and JSON output.
    pub fn one_based(&self) -> Vec<usize> {
        self.vars.iter().map(|v| v + 1).collect()
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.vars.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", v + 1)?;
        }
        write!(f, ")")
    }
}

/// Support, gcd and full-support flag of a nonzero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportInfo {
    pub support: Vec<usize>,
    pub gcd: Monomial,
    pub full_supported: bool,
}

/// An ideal normalized to full support and gcd 1, with the map back to the
/// original variable indices.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub ideal: MonomialIdeal,
    /// `vars[k]` is the original index of variable `k` of the normalized ring.
    pub vars: Vec<usize>,
    pub gcd: Monomial,
}

/// A monomial ideal represented by its minimal generating set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Reduces a generating set to the divisibility-minimal elements, in canonical order.
pub fn minimalize<I>(gens: I, n: usize) -> Result<MonomialIdeal>
where
    I: IntoIterator<Item = Monomial>,
{
    let mut gens: Vec<Monomial> = gens.into_iter().collect();
    for g in &gens {
        check_len(n, g.n())?;
        if g.is_one() {
            return Err(Error::UnitIdeal);
        }
    }
    gens.sort_by(canonical_cmp);
    gens.dedup();
    let equigenerated = match (gens.first(), gens.last()) {
        (Some(a), Some(b)) => a.degree() == b.degree(),
        _ => true,
    };
    if !equigenerated {
        // Ascending degree order: a generator can only be divided by one kept earlier.
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|h| h.divides(&g)) {
                kept.push(g);
            }
        }
        gens = kept;
    }
    Ok(MonomialIdeal { n, gens })
}

impl MonomialIdeal {
    pub fn new<I>(n: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        minimalize(gens, n)
    }

    /// Convenience constructor from exponent rows.
    pub fn from_exponents(n: usize, rows: &[&[u32]]) -> Result<Self> {
        minimalize(rows.iter().map(|r| Monomial::new(r.to_vec())), n)
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: Vec::new() }
    }

    pub fn maximal(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: (0..n).map(|i| Monomial::var(n, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// The zero ideal has no generators.
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The common degree of the generators, if there is one.
    pub fn equigenerated_degree(&self) -> Option<u64> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub(crate) fn generator_set(&self) -> HashSet<&[u32]> {
        self.gens.iter().map(|g| g.exponents()).collect()
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_len(self.n, other.n)?;
        let mut products = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                products.push(a.checked_mul(b)?);
            }
        }
        minimalize(products, self.n)
    }

    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        if k == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `I : u`, generated by `g / gcd(g, u)` over `g` in `G(I)`.
    pub fn colon(&self, u: &Monomial) -> Result<MonomialIdeal> {
        check_len(self.n, u.n())?;
        minimalize(self.gens.iter().map(|g| g.colon(u)), self.n)
    }

    /// `I : u^infinity`, the fixed point of repeated colons by `u`.
    pub fn saturate(&self, u: &Monomial) -> Result<MonomialIdeal> {
        check_len(self.n, u.n())?;
        let mut current = self.clone();
        if u.is_one() {
            return Ok(current);
        }
        loop {
            let next = current.colon(u)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Monomial localization `I(p)`: every variable outside `p` is set to 1.
    /// The result stays in the same ring, supported inside `p`.
    pub fn localize(&self, p: &MonomialPrime) -> Result<MonomialIdeal> {
        if let Some(&v) = p.vars().last() {
            if v >= self.n {
                return Err(Error::InvalidArgument(format!(
                    "prime variable x{} outside ring of {} variables",
                    v + 1,
                    self.n
                )));
            }
        }
        let mut keep = vec![false; self.n];
        for &v in p.vars() {
            keep[v] = true;
        }
        let localized = self.gens.iter().map(|g| {
            let mut g = g.clone();
            for (e, &k) in g.exps_mut().iter_mut().zip(&keep) {
                if !k {
                    *e = 0;
                }
            }
            g
        });
        minimalize(localized, self.n)
    }

    /// Localizes at the prime on `vars` and re-indexes into a ring with `vars.len()` variables.
    pub fn restrict(&self, vars: &[usize]) -> Result<MonomialIdeal> {
        let localized = self.localize(&MonomialPrime::new(vars.to_vec()))?;
        minimalize(
            localized.gens.iter().map(|g| g.restrict(vars)),
            vars.len(),
        )
    }

    pub fn support_and_gcd(&self) -> Result<SupportInfo> {
        let first = self.gens.first().ok_or(Error::ZeroIdeal)?;
        let mut gcd = first.clone();
        let mut present = vec![false; self.n];
        for g in &self.gens {
            gcd = gcd.gcd(g);
            for (p, &e) in present.iter_mut().zip(g.exponents()) {
                *p |= e > 0;
            }
        }
        let support: Vec<usize> = (0..self.n).filter(|&i| present[i]).collect();
        let full_supported = support.len() == self.n;
        Ok(SupportInfo {
            support,
            gcd,
            full_supported,
        })
    }

    /// `lcm` of the minimal generators.
    pub fn lcm(&self) -> Result<Monomial> {
        let first = self.gens.first().ok_or(Error::ZeroIdeal)?;
        Ok(self.gens.iter().fold(first.clone(), |acc, g| acc.lcm(g)))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_len(self.n, other.n)?;
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                lcms.push(a.lcm(b));
            }
        }
        minimalize(lcms, self.n)
    }

    /// Divides out the gcd and drops variables outside the support.
    pub fn normalize(&self) -> Result<Normalized> {
        let info = self.support_and_gcd()?;
        let divided = self.gens.iter().map(|g| g.colon(&info.gcd));
        let divided = minimalize(divided, self.n)?;
        let vars = divided.support_and_gcd()?.support;
        let ideal = minimalize(divided.gens.iter().map(|g| g.restrict(&vars)), vars.len())?;
        Ok(Normalized {
            ideal,
            vars,
            gcd: info.gcd,
        })
    }

    /// Embeds into a ring with `n` variables, sending variable `k` to `vars[k]`.
    pub fn embed(&self, n: usize, vars: &[usize]) -> Result<MonomialIdeal> {
        check_len(self.n, vars.len())?;
        minimalize(
            self.gens.iter().map(|g| {
                let mut exps = vec![0; n];
                for (k, &v) in vars.iter().enumerate() {
                    exps[v] = g.exponent(k);
                }
                Monomial::new(exps)
            }),
            n,
        )
    }

    /// Applies the variable permutation `x_{i+1} -> x_{perm[i]+1}`.
    pub fn permute(&self, perm: &[usize]) -> Result<MonomialIdeal> {
        self.embed(self.n, perm)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
