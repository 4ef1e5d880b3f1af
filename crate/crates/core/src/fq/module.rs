//! The truncated free module `(F_q[T]/T^N)^d` and echelon forms of its
//! subspaces.
//!
//! Coordinates are stored in hlex position: the monomial `T^a u_i` sits at
//! `a * d + (i - 1)`. Multiplication by `T` is then a shift by `d` that drops
//! everything past `d * N`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::fq::field::Fq;

/// A monomial `T^level u_seat`, seat 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub seat: usize,
    pub level: usize,
}

impl Monomial {
    pub fn new(seat: usize, level: usize) -> Self {
        Monomial { seat, level }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            0 => write!(f, "u{}", self.seat),
            1 => write!(f, "T u{}", self.seat),
            a => write!(f, "T^{a} u{}", self.seat),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// `(level, seat)` lexicographic.
    Hlex,
    /// `(seat, level)` lexicographic.
    Lex,
}

/// `(F_q[T]/T^N)^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ambient {
    field: Fq,
    d: usize,
    n_trunc: usize,
}

impl Ambient {
    pub fn new(q: u64, d: usize, n_trunc: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Ambient { field: Fq::new(q)?, d, n_trunc })
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn truncation(&self) -> usize {
        self.n_trunc
    }

    /// `dim_{F_q} = d * N`.
    pub fn dim(&self) -> usize {
        self.d * self.n_trunc
    }

    pub fn position(&self, m: Monomial) -> usize {
        debug_assert!(m.seat >= 1 && m.seat <= self.d && m.level < self.n_trunc);
        m.level * self.d + m.seat - 1
    }

    pub fn monomial_at(&self, pos: usize) -> Monomial {
        Monomial::new(pos % self.d + 1, pos / self.d)
    }

    /// Hlex positions listed from smallest to largest monomial in `order`.
    pub fn columns(&self, order: MonomialOrder) -> Vec<usize> {
        match order {
            MonomialOrder::Hlex => (0..self.dim()).collect(),
            MonomialOrder::Lex => (1..=self.d)
                .flat_map(|i| (0..self.n_trunc).map(move |a| (a, i)))
                .map(|(a, i)| self.position(Monomial::new(i, a)))
                .collect(),
        }
    }

    /// `q^{dN}`, the number of vectors in the ambient space.
    pub fn cardinality(&self) -> Option<u128> {
        (self.q() as u128).checked_pow(u32::try_from(self.dim()).ok()?)
    }
}

/// A vector of the ambient module, coordinates in hlex position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleVector {
    coeffs: Vec<u8>,
}

impl ModuleVector {
    pub fn zero(amb: &Ambient) -> Self {
        ModuleVector { coeffs: vec![0; amb.dim()] }
    }

    /// The monomial vector, or zero when it lies at or past `T^N`.
    pub fn monomial(amb: &Ambient, m: Monomial) -> Self {
        let mut v = ModuleVector::zero(amb);
        if m.level < amb.n_trunc {
            v.coeffs[amb.position(m)] = 1;
        }
        v
    }

    pub fn from_coeffs(amb: &Ambient, coeffs: Vec<u8>) -> Result<Self> {
        if coeffs.len() != amb.dim() {
            return Err(Error::AmbientMismatch);
        }
        let q = amb.q() as u8;
        Ok(ModuleVector { coeffs: coeffs.into_iter().map(|c| c % q).collect() })
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn get(&self, amb: &Ambient, m: Monomial) -> u8 {
        if m.level >= amb.n_trunc {
            return 0;
        }
        self.coeffs[amb.position(m)]
    }

    pub fn set(&mut self, amb: &Ambient, m: Monomial, c: u8) {
        self.coeffs[amb.position(m)] = c % amb.q() as u8;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, f: Fq, c: u8, other: &ModuleVector) {
        if c == 0 {
            return;
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if b != 0 {
                *a = f.add(*a, f.mul(c, b));
            }
        }
    }

    pub fn mul_by_t(&self, amb: &Ambient) -> ModuleVector {
        let d = amb.d;
        let len = self.coeffs.len();
        let mut coeffs = vec![0; len];
        if len > d {
            coeffs[d..].copy_from_slice(&self.coeffs[..len - d]);
        }
        ModuleVector { coeffs }
    }

    /// Smallest monomial with a nonzero coefficient, as a hlex position.
    pub fn leading_position(&self, order_columns: &[usize]) -> Option<usize> {
        order_columns.iter().copied().find(|&p| self.coeffs[p] != 0)
    }

    pub fn display<'a>(&'a self, amb: &'a Ambient) -> impl fmt::Display + 'a {
        VectorDisplay { v: self, amb }
    }
}

struct VectorDisplay<'a> {
    v: &'a ModuleVector,
    amb: &'a Ambient,
}

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, &c) in self.v.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c != 1 {
                write!(f, "{c} ")?;
            }
            write!(f, "{}", self.amb.monomial_at(p))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Reduced echelon basis of a subspace with respect to a monomial order.
///
/// Rows are sorted by pivot (smallest monomial first), each pivot is the
/// smallest monomial of its row with coefficient 1, and pivot columns vanish
/// in every other row. The basis is a canonical name for the subspace once
/// the order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubmoduleBasis {
    ambient: Ambient,
    order: MonomialOrder,
    rows: Vec<ModuleVector>,
}

// `Ambient` needs an order for `SubmoduleBasis: Ord`; bases are only compared
// within one ambient, so the field and shape decide ties.
impl PartialOrd for Ambient {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ambient {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field, self.d, self.n_trunc).cmp(&(other.field, other.d, other.n_trunc))
    }
}

impl SubmoduleBasis {
    /// Assembles a basis already known to be in reduced echelon form.
    pub(crate) fn from_reduced_rows(
        ambient: Ambient,
        order: MonomialOrder,
        rows: Vec<ModuleVector>,
    ) -> Self {
        SubmoduleBasis { ambient, order, rows }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn rows(&self) -> &[ModuleVector] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `dim_{F_q}` of the quotient by this subspace.
    pub fn codim(&self) -> usize {
        self.ambient.dim() - self.rows.len()
    }

    /// Pivot positions (hlex coordinates), in row order.
    pub fn pivots(&self) -> Vec<usize> {
        let cols = self.ambient.columns(self.order);
        self.rows
            .iter()
            .map(|r| r.leading_position(&cols).expect("rows are nonzero"))
            .collect()
    }

    /// What is left of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        let f = self.ambient.field;
        let mut out = v.clone();
        for (row, p) in self.rows.iter().zip(self.pivots()) {
            let c = out.coeffs[p];
            if c != 0 {
                out.add_scaled(f, f.neg(c), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Closed under multiplication by `T`, i.e. an `F_q[T]`-submodule.
    pub fn is_t_stable(&self) -> bool {
        self.rows.iter().all(|r| self.contains(&r.mul_by_t(&self.ambient)))
    }

    /// The same subspace in echelon form for another order.
    pub fn reorder(&self, order: MonomialOrder) -> SubmoduleBasis {
        if order == self.order {
            return self.clone();
        }
        echelonize(&self.ambient, self.rows.iter().cloned(), order)
    }

    /// Submodule generated by `gens`: the span of all `T^k g`.
    pub fn generated_by(
        amb: &Ambient,
        gens: impl IntoIterator<Item = ModuleVector>,
        order: MonomialOrder,
    ) -> SubmoduleBasis {
        let mut all = Vec::new();
        for g in gens {
            let mut v = g;
            while !v.is_zero() {
                let next = v.mul_by_t(amb);
                all.push(v);
                v = next;
            }
        }
        echelonize(amb, all, order)
    }
}

impl fmt::Display for SubmoduleBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display(&self.ambient))?;
        }
        f.write_str(">")
    }
}

/// Reduced echelon basis of the span of `vectors`.
pub fn echelonize(
    amb: &Ambient,
    vectors: impl IntoIterator<Item = ModuleVector>,
    order: MonomialOrder,
) -> SubmoduleBasis {
    let f = amb.field;
    let mut rows: Vec<ModuleVector> = vectors.into_iter().filter(|v| !v.is_zero()).collect();
    let mut rank = 0;
    for col in amb.columns(order) {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].coeffs[col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank].coeffs[col]);
        for c in rows[rank].coeffs.iter_mut() {
            *c = f.mul(*c, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank {
                let c = row.coeffs[col];
                row.add_scaled(f, f.neg(c), &pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    SubmoduleBasis { ambient: *amb, order, rows }
}

/// Exponents `(n_1, ..., n_d)` of the leading module in `order`: `n_i` is the
/// least level whose monomial on seat `i` is a leading monomial of the
/// submodule, counting the implicit `T^N` tail.
pub fn leading_module_in(m: &SubmoduleBasis, order: MonomialOrder) -> Result<Config> {
    let amb = m.ambient;
    let codim = m.codim();
    if codim > amb.n_trunc {
        return Err(Error::ColengthExceedsTruncation { codim, trunc: amb.n_trunc });
    }
    if !m.is_t_stable() {
        return Err(Error::Defect("leading module of a subspace that is not T-stable".into()));
    }
    let basis = m.reorder(order);
    let mut levels = vec![amb.n_trunc; amb.d];
    for p in basis.pivots() {
        let mono = amb.monomial_at(p);
        let slot = &mut levels[mono.seat - 1];
        *slot = (*slot).min(mono.level);
    }
    let x = Config::new(levels)?;
    if x.size() != codim {
        return Err(Error::Defect(format!(
            "leading module {x} has size {} but the quotient has dimension {codim}",
            x.size()
        )));
    }
    Ok(x)
}

/// Leading module in the hlex order.
pub fn leading_module(m: &SubmoduleBasis) -> Result<Config> {
    leading_module_in(m, MonomialOrder::Hlex)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(q: u64, d: usize, n: usize) -> Ambient {
        Ambient::new(q, d, n).unwrap()
    }

    fn mono(a: &Ambient, seat: usize, level: usize) -> ModuleVector {
        ModuleVector::monomial(a, Monomial::new(seat, level))
    }

    fn sum(a: &Ambient, vs: &[ModuleVector]) -> ModuleVector {
        let mut out = ModuleVector::zero(a);
        for v in vs {
            out.add_scaled(a.field(), 1, v);
        }
        out
    }

    #[test]
    fn mul_by_t_examples() {
        let a = amb(2, 2, 3);
        assert_eq!(mono(&a, 1, 0).mul_by_t(&a), mono(&a, 1, 1));
        assert_eq!(mono(&a, 2, 2).mul_by_t(&a), ModuleVector::zero(&a));
        let v = sum(&a, &[mono(&a, 1, 0), mono(&a, 2, 1)]);
        assert_eq!(v.mul_by_t(&a), sum(&a, &[mono(&a, 1, 1), mono(&a, 2, 2)]));
    }

    #[test]
    fn lex_columns() {
        let a = amb(2, 2, 3);
        let lex: Vec<Monomial> = a.columns(MonomialOrder::Lex).into_iter().map(|p| a.monomial_at(p)).collect();
        assert_eq!(lex[0], Monomial::new(1, 0));
        assert_eq!(lex[2], Monomial::new(1, 2));
        assert_eq!(lex[3], Monomial::new(2, 0));
    }

    #[test]
    fn echelonize_examples() {
        let a = amb(3, 2, 2);
        assert_eq!(echelonize(&a, vec![ModuleVector::zero(&a)], MonomialOrder::Hlex).dim(), 0);
        let u1 = mono(&a, 1, 0);
        let u2 = mono(&a, 2, 0);
        let b = echelonize(&a, vec![u1.clone(), sum(&a, &[u1.clone(), u2.clone()])], MonomialOrder::Hlex);
        assert_eq!(b.rows(), &[u1.clone(), u2.clone()]);

        // Idempotent when a span element is added.
        let mut w = ModuleVector::zero(&a);
        w.add_scaled(a.field(), 2, &u1);
        w.add_scaled(a.field(), 1, &u2);
        let b2 = echelonize(&a, b.rows().iter().cloned().chain([w]), MonomialOrder::Hlex);
        assert_eq!(b, b2);
    }

    #[test]
    fn echelon_rows_are_reduced() {
        let a = amb(3, 2, 2);
        let f = a.field();
        let mut v1 = ModuleVector::zero(&a);
        v1.coeffs = vec![2, 1, 0, 1];
        let mut v2 = ModuleVector::zero(&a);
        v2.coeffs = vec![1, 1, 1, 0];
        let b = echelonize(&a, vec![v1.clone(), v2.clone()], MonomialOrder::Hlex);
        let piv = b.pivots();
        assert!(piv.windows(2).all(|w| w[0] < w[1]));
        for (r, &p) in b.rows().iter().zip(&piv) {
            assert_eq!(r.coeffs[p], 1);
            assert!(r.coeffs[..p].iter().all(|&c| c == 0));
            for (r2, &p2) in b.rows().iter().zip(&piv) {
                if p2 != p {
                    assert_eq!(r2.coeffs[p], 0);
                }
            }
        }
        assert!(b.contains(&v1) && b.contains(&v2));
        let mut combo = v1.clone();
        combo.add_scaled(f, 2, &v2);
        assert!(b.contains(&combo));
    }

    #[test]
    fn leading_module_examples() {
        for d in 1..=3 {
            let a = amb(2, d, 2);
            let full = SubmoduleBasis::generated_by(
                &a,
                (1..=d).map(|i| mono(&a, i, 0)),
                MonomialOrder::Hlex,
            );
            assert_eq!(leading_module(&full).unwrap(), Config::origin(d).unwrap());

            let mut gens = vec![mono(&a, 1, 1)];
            gens.extend((2..=d).map(|i| mono(&a, i, 0)));
            let m = SubmoduleBasis::generated_by(&a, gens, MonomialOrder::Hlex);
            let mut expected = vec![0; d];
            expected[0] = 1;
            assert_eq!(leading_module(&m).unwrap().levels(), &expected[..]);
        }

        // <u1 + T u2, T u1, T u2> = <u1, T u1, T u2>, so x = (0, 1).
        let a = amb(2, 2, 2);
        let f1 = sum(&a, &[mono(&a, 1, 0), mono(&a, 2, 1)]);
        let m = SubmoduleBasis::generated_by(&a, [f1, mono(&a, 1, 1), mono(&a, 2, 1)], MonomialOrder::Hlex);
        assert_eq!(leading_module(&m).unwrap().levels(), &[0, 1]);
    }

    #[test]
    fn leading_module_rejects_deep_quotients() {
        let a = amb(2, 2, 1);
        let zero = echelonize(&a, Vec::new(), MonomialOrder::Hlex);
        assert_eq!(
            leading_module(&zero),
            Err(Error::ColengthExceedsTruncation { codim: 2, trunc: 1 })
        );
    }

    #[test]
    fn t_stability() {
        let a = amb(2, 1, 3);
        let u = mono(&a, 1, 0);
        let span_u = echelonize(&a, vec![u.clone()], MonomialOrder::Hlex);
        assert!(!span_u.is_t_stable());
        assert!(SubmoduleBasis::generated_by(&a, [u], MonomialOrder::Hlex).is_t_stable());
    }

    #[test]
    fn display_forms() {
        let a = amb(3, 2, 3);
        let mut v = mono(&a, 2, 2);
        v.add_scaled(a.field(), 2, &mono(&a, 1, 1));
        assert_eq!(v.display(&a).to_string(), "2 T u1 + T^2 u2");
        assert_eq!(ModuleVector::zero(&a).display(&a).to_string(), "0");
    }
}
