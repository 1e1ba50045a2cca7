//! Lattices with an explicit rational ambient embedding, and the structural
//! operations between them: duals, sections, projections, glue lattices,
//! index-2 neighbours and quotient structure.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};


use crate::error::{Error, Result};
use crate::linalg::{elementary_divisors, is_positive_definite, lll_reduce, row_lattice_basis, smith};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rational::{
    fmt_rational, gcd_slice, int, ints_to_rats, lcm_denominators, parse_rational, rat, rational_sqrt,
    to_i64, RatVec, Rational, ScaledVec,
};

/// A lattice spanned by the rows of `basis` inside `Q^m`, where `Q^m` carries
/// the inner product given by `metric` (the identity for ordinary coordinates).
/// `gram = basis · metric · basisᵀ` is cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: RatMatrix,
    metric: RatMatrix,
    gram: RatMatrix,
}

impl Lattice {
    pub fn new(basis: RatMatrix) -> Result<Self> {
        let m = basis.cols();
        Self::with_metric(basis, RatMatrix::identity(m))
    }

    pub fn from_i64_basis(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(RatMatrix::from_i64_rows(rows))
    }

    pub fn with_metric(basis: RatMatrix, metric: RatMatrix) -> Result<Self> {
        if metric.rows() != basis.cols() || !metric.is_symmetric() {
            return Err(Error::Dimension("metric does not match ambient dimension".into()));
        }
        let gram = basis.mul(&metric)?.mul(&basis.transpose())?;
        if basis.rows() > basis.cols() || !is_positive_definite(&gram) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Lattice { basis, metric, gram })
    }

    /// Gram-only lattice: the ambient space is the coordinate space itself.
    pub fn from_gram(gram: RatMatrix) -> Result<Self> {
        let n = gram.rows();
        Self::with_metric(RatMatrix::identity(n), gram)
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn metric(&self) -> &RatMatrix {
        &self.metric
    }

    /// Lattice spanned by `coeffs · basis`; `coeffs` may be rational (superlattices).
    pub fn from_coeffs(&self, coeffs: &RatMatrix) -> Result<Lattice> {
        Lattice::with_metric(coeffs.mul(&self.basis)?, self.metric.clone())
    }

    pub fn from_int_coeffs(&self, coeffs: &IntMatrix) -> Result<Lattice> {
        self.from_coeffs(&RatMatrix::from_int_matrix(coeffs))
    }

    /// Inner product of two vectors given in lattice coordinates.
    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.inner(x, x)
    }

    pub fn norm_int(&self, x: &[i64]) -> Rational {
        let r = ints_to_rats(x);
        self.norm(&r)
    }

    pub fn to_ambient(&self, coords: &[Rational]) -> RatVec {
        self.basis.vec_mul(coords)
    }

    /// Lattice coordinates of an ambient vector in the span.
    pub fn coords_of(&self, ambient: &[Rational]) -> Result<RatVec> {
        let t = RatMatrix::from_rows_with_cols(vec![ambient.to_vec()], self.ambient_dim())?;
        Ok(self.basis.solve_left(&t)?.row_vec(0))
    }

    pub fn coords_of_many(&self, ambient: &RatMatrix) -> Result<RatMatrix> {
        self.basis.solve_left(ambient)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| self.gram[(i, i)].to_integer() % 2 == BigInt::zero())
    }

    pub fn squared_determinant(&self) -> Rational {
        self.gram.determinant().expect("square gram")
    }

    pub fn determinant(&self) -> Determinant {
        let squared = self.squared_determinant();
        let root = rational_sqrt(&squared);
        Determinant { squared, root }
    }

    /// `L* = {x ∈ L⊗Q : ⟨x, L⟩ ⊆ Z}` with basis `gram⁻¹ · basis`.
    pub fn dual(&self) -> Result<Lattice> {
        let inv = self.gram.inverse()?;
        self.from_coeffs(&inv)
    }

    /// LLL-reduced basis of the same lattice, with the transform from the old basis.
    pub fn lll(&self) -> Result<(Lattice, IntMatrix)> {
        let (_, t) = lll_reduce(&self.gram)?;
        Ok((self.from_int_coeffs(&t)?, t))
    }

    /// `{x ∈ L : ⟨x, v⟩ = 0}` for a primitive nonzero `v` in lattice coordinates.
    pub fn orthogonal_section(&self, v: &[i64]) -> Result<Lattice> {
        Ok(self.orthogonal_section_coeffs(&[v.to_vec()])?.0)
    }

    /// Saturated section orthogonal to all of `vs`; also returns the basis in `self` coordinates.
    pub fn orthogonal_section_coeffs(&self, vs: &[Vec<i64>]) -> Result<(Lattice, IntMatrix)> {
        for v in vs {
            check_primitive(v, self.rank())?;
        }
        let rows: Vec<RatVec> = vs
            .iter()
            .map(|v| self.gram.mul_vec(&ints_to_rats(v)))
            .collect();
        let m = RatMatrix::from_rows_with_cols(rows, self.rank())?;
        let k = crate::linalg::kernel_rational(&m);
        Ok((self.from_int_coeffs(&k)?, k))
    }

    /// Image of `L` under orthogonal projection onto `v^⊥`.
    pub fn project_orthogonal(&self, v: &[i64]) -> Result<Lattice> {
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        if v.len() != self.rank() {
            return Err(Error::Dimension("vector length".into()));
        }
        let vr = ints_to_rats(v);
        let gv = self.gram.mul_vec(&vr);
        let vv = self.norm(&vr);
        let n = self.rank();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let f = &gv[i] / &vv;
            let row: RatVec = (0..n)
                .map(|j| {
                    let e = if i == j { Rational::one() } else { Rational::zero() };
                    e - &f * &vr[j]
                })
                .collect();
            rows.push(row);
        }
        let coeffs = lattice_basis_from_generators(&RatMatrix::from_rows(rows)?);
        self.from_coeffs(&coeffs)
    }

    /// Expresses `sub`'s basis in this lattice's basis.
    pub fn relative_coeffs(&self, sub: &Lattice) -> Result<RatMatrix> {
        self.basis.solve_left(sub.basis())
    }

    /// The intermediate lattice `L ⊆ M ⊆ L*` with `[M : L] = d`, for cyclic `L*/L`.
    pub fn glue_lattice(&self, d: u64) -> Result<Lattice> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let g = self.gram.to_int_matrix()?;
        // Rows of L expressed in the dual basis are the rows of the Gram matrix.
        let (diag, _u, v) = smith(&g);
        let n = self.rank();
        let factors: Vec<BigInt> = (0..n)
            .map(|i| diag[(i, i)].clone())
            .filter(|x| !x.is_one())
            .collect();
        if factors.len() > 1 {
            return Err(Error::NotCyclic(factors.iter().map(|x| x.to_string()).collect()));
        }
        let order = factors.first().cloned().unwrap_or_else(BigInt::one);
        let db = BigInt::from(d);
        if d == 0 || !(&order % &db).is_zero() {
            return Err(Error::NotDivisor(d.to_string(), order.to_string()));
        }
        if d == 1 {
            return Ok(self.clone());
        }
        // Generator of L*/L: last row of V⁻¹ in dual coordinates.
        let vinv = RatMatrix::from_int_matrix(&v).inverse()?;
        let gen_dual = vinv.row_vec(n - 1);
        let ginv = self.gram.inverse()?;
        let gen = ginv.vec_mul(&gen_dual);
        let step = Rational::from_integer(&order / &db);
        let glue: RatVec = gen.iter().map(|x| x * &step).collect();
        let mut rows: Vec<RatVec> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
            .collect();
        rows.push(glue);
        let coeffs = lattice_basis_from_generators(&RatMatrix::from_rows(rows)?);
        self.from_coeffs(&coeffs)
    }

    /// All `2ⁿ − 1` sublattices `{w : f(w) ≡ 0 mod 2}`, lazily, in lexicographic order of `f ∈ F₂ⁿ`.
    pub fn index2_sublattices(&self) -> Index2Iter<'_> {
        Index2Iter {
            lattice: self,
            next: 1,
            end: 1u128 << self.rank(),
            kind: Index2Kind::Sub,
        }
    }

    /// All `2ⁿ − 1` superlattices `L + Z·w/2`, lazily, same order.
    pub fn index2_superlattices(&self) -> Index2Iter<'_> {
        Index2Iter {
            lattice: self,
            next: 1,
            end: 1u128 << self.rank(),
            kind: Index2Kind::Super,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "lattice {} {}", self.rank(), self.ambient_dim());
        write_rows(&mut s, &self.basis);
        if self.metric != RatMatrix::identity(self.ambient_dim()) {
            let _ = writeln!(s, "# metric");
            write_rows(&mut s, &self.metric);
        }
        let _ = writeln!(s, "# gram");
        write_rows(&mut s, &self.gram);
        s
    }

    pub fn from_text(text: &str) -> Result<Lattice> {
        parse_lattice(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Determinant {
    /// `det(gram)`, always exact.
    pub squared: Rational,
    /// `√det(gram)` when it is rational.
    pub root: Option<Rational>,
}

fn check_primitive(v: &[i64], rank: usize) -> Result<()> {
    if v.len() != rank {
        return Err(Error::Dimension(format!("vector of length {} in rank {}", v.len(), rank)));
    }
    let g = gcd_slice(v);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    if g > 1 {
        return Err(Error::NotPrimitive(g.to_string()));
    }
    Ok(())
}

/// Basis (rows, same coordinates) of the lattice generated by rational rows.
pub fn lattice_basis_from_generators(gens: &RatMatrix) -> RatMatrix {
    let (int, d) = gens.clear_denominators();
    let b = row_lattice_basis(&int);
    let dr = Rational::from_integer(d);
    RatMatrix::from_int_matrix(&b).scale(&(Rational::one() / dr))
}

fn write_rows(s: &mut String, m: &RatMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(fmt_rational).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
}

fn parse_lattice(text: &str) -> Result<Lattice> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut pos = 0;
    let (ln, header) = *lines.first().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    pos += 1;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "lattice" {
        return Err(Error::Parse { line: ln, msg: "expected `lattice <rank> <ambient_dim>`".into() });
    }
    let parse_usize = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse { line: ln, msg: format!("bad count {s}") });
    let rank = parse_usize(parts[1])?;
    let dim = parse_usize(parts[2])?;
    let basis = read_rat_block(&lines, &mut pos, rank, dim)?;
    let mut metric = RatMatrix::identity(dim);
    let mut gram = None;
    while let Some(&(ln, l)) = lines.get(pos) {
        pos += 1;
        match l {
            "# metric" => metric = read_rat_block(&lines, &mut pos, dim, dim)?,
            "# gram" => gram = Some(read_rat_block(&lines, &mut pos, rank, rank)?),
            _ if l.starts_with('#') => continue,
            _ => return Err(Error::Parse { line: ln, msg: format!("unexpected line `{l}`") }),
        }
    }
    let lat = Lattice::with_metric(basis, metric).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
    if let Some(g) = gram {
        if g != lat.gram {
            return Err(Error::Parse { line: 0, msg: "gram block does not match basis".into() });
        }
    }
    Ok(lat)
}

/// Reads `n` lines of `width` rationals starting at `lines[*pos]`.
pub(crate) fn read_rat_block(lines: &[(usize, &str)], pos: &mut usize, n: usize, width: usize) -> Result<RatMatrix> {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let &(ln, l) = lines.get(*pos).ok_or(Error::Parse { line: 0, msg: "unexpected end of input".into() })?;
        *pos += 1;
        let row = l
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or(Error::Parse { line: ln, msg: format!("bad rational `{t}`") }))
            .collect::<Result<RatVec>>()?;
        if row.len() != width {
            return Err(Error::Parse { line: ln, msg: format!("expected {width} entries") });
        }
        rows.push(row);
    }
    RatMatrix::from_rows_with_cols(rows, width)
}

#[derive(Clone, Copy, Debug)]
enum Index2Kind {
    Sub,
    Super,
}

pub struct Index2Iter<'a> {
    lattice: &'a Lattice,
    next: u128,
    end: u128,
    kind: Index2Kind,
}

/// Bits of `mask` as an F₂ⁿ vector, most significant coordinate first.
pub fn f2_vector(mask: u128, n: usize) -> Vec<i64> {
    (0..n).map(|i| ((mask >> (n - 1 - i)) & 1) as i64).collect()
}

/// Basis (in `L` coordinates) of `{w : f·w ≡ 0 mod 2}`.
pub fn index2_sub_coeffs(f: &[i64]) -> IntMatrix {
    let n = f.len();
    let j = f.iter().position(|&x| x & 1 == 1).expect("nonzero functional");
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0i64; n];
            if i == j {
                r[j] = 2;
            } else {
                r[i] = 1;
                if f[i] & 1 == 1 {
                    r[j] = -1;
                }
            }
            r
        })
        .collect();
    IntMatrix::from_i64_rows(&rows)
}

/// Basis (in `L` coordinates) of `L + Z·w/2`.
pub fn index2_super_coeffs(w: &[i64]) -> RatMatrix {
    let n = w.len();
    let j = w.iter().position(|&x| x & 1 == 1).expect("nonzero vector");
    let rows: Vec<RatVec> = (0..n)
        .map(|i| {
            if i == j {
                w.iter().map(|&x| rat(x & 1, 2)).collect()
            } else {
                (0..n).map(|k| if k == i { int(1) } else { int(0) }).collect()
            }
        })
        .collect();
    RatMatrix::from_rows(rows).expect("square")
}

impl Iterator for Index2Iter<'_> {
    type Item = Lattice;

    fn next(&mut self) -> Option<Lattice> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let v = f2_vector(mask, self.lattice.rank());
        let lat = match self.kind {
            Index2Kind::Sub => self.lattice.from_int_coeffs(&index2_sub_coeffs(&v)),
            Index2Kind::Super => self.lattice.from_coeffs(&index2_super_coeffs(&v)),
        };
        Some(lat.expect("index-2 neighbour of a valid lattice"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.end - self.next) as usize;
        (rem, Some(rem))
    }
}

/// A centering `sub ⊆ super_` of equal rank with the integral transform between their bases.
#[derive(Clone, Debug)]
pub struct SublatticePair {
    pub sub: Lattice,
    pub super_: Lattice,
    pub index: BigInt,
    /// Rows: `sub` basis vectors in `super_` coordinates.
    pub transform: IntMatrix,
}

impl SublatticePair {
    pub fn new(sub: Lattice, super_: Lattice) -> Result<Self> {
        if sub.rank() != super_.rank() {
            return Err(Error::Dimension("centering needs equal ranks".into()));
        }
        let t = super_.relative_coeffs(&sub).map_err(|_| Error::NotContained)?;
        if !t.is_integral() {
            return Err(Error::NotContained);
        }
        let transform = t.to_int_matrix()?;
        let index = transform.determinant().abs();
        Ok(SublatticePair { sub, super_, index, transform })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    /// Nontrivial invariant factors `d₁ | d₂ | …`.
    pub invariant_factors: Vec<BigInt>,
}

impl QuotientStructure {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }
}

pub fn quotient_structure(pair: &SublatticePair) -> QuotientStructure {
    let invariant_factors = elementary_divisors(&pair.transform)
        .into_iter()
        .filter(|x| !x.is_one())
        .collect();
    QuotientStructure { invariant_factors }
}

/// `L*/L` for an integral lattice.
pub fn discriminant_group(l: &Lattice) -> Result<QuotientStructure> {
    let pair = SublatticePair::new(l.clone(), l.dual()?)?;
    Ok(quotient_structure(&pair))
}

/// Exact map from ambient-style integer vectors to coordinates in a fixed basis.
///
/// The basis is given by integer rows (k × m, full row rank). Solving uses a
/// precomputed inverse of a k × k column minor scaled to integers, so bulk
/// conversions stay in machine arithmetic; every result is checked against the basis.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    inv_num: Vec<Vec<i128>>,
    inv_den: i128,
}

impl CoordinateSolver {
    pub fn new(basis: &IntMatrix) -> Result<Self> {
        let k = basis.rows();
        let (_, pivots) = RatMatrix::from_int_matrix(basis).rref();
        if pivots.len() < k {
            return Err(Error::Degenerate(k));
        }
        let minor = RatMatrix::from_rows(
            (0..k)
                .map(|i| pivots.iter().map(|&c| Rational::from_integer(basis[(i, c)].clone())).collect())
                .collect(),
        )?;
        let inv = minor.inverse()?;
        let den = inv.denominator_lcm();
        let inv_num = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let x = &inv[(i, j)];
                        to_i64(&(x.numer() * (&den / x.denom()))).map(|v| v as i128)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoordinateSolver {
            basis: basis.to_i64_rows()?,
            pivots,
            inv_num,
            inv_den: to_i64(&den)? as i128,
        })
    }

    /// Coordinates `y` with `y · basis = v`, where `v = num/den`.
    pub fn solve(&self, v: &ScaledVec) -> Result<ScaledVec> {
        let k = self.pivots.len();
        let mut y = vec![0i128; k];
        for (a, &c) in self.pivots.iter().enumerate() {
            let x = v.num[c] as i128;
            if x == 0 {
                continue;
            }
            for (j, yj) in y.iter_mut().enumerate() {
                *yj += x * self.inv_num[a][j];
            }
        }
        let den = self.inv_den * v.den as i128;
        let g = y.iter().fold(den, |g, &x| gcd_i128(g, x));
        let den = den / g;
        let num: Vec<i64> = y
            .iter()
            .map(|&x| i64::try_from(x / g).map_err(|_| Error::Overflow("coordinate solve")))
            .collect::<Result<_>>()?;
        let den64 = i64::try_from(den).map_err(|_| Error::Overflow("coordinate solve"))?;
        // Verify num · basis == den · v / v.den componentwise.
        for c in 0..self.basis[0].len() {
            let lhs: i128 = num.iter().zip(&self.basis).map(|(&a, row)| a as i128 * row[c] as i128).sum();
            let rhs = v.num[c] as i128 * den;
            if lhs * v.den as i128 != rhs {
                return Err(Error::OutsideSpan);
            }
        }
        Ok(ScaledVec { num, den: den64 })
    }

    pub fn solve_int(&self, v: &[i64]) -> Result<Vec<i64>> {
        let s = self.solve(&ScaledVec::from_ints(v))?;
        if s.den != 1 {
            return Err(Error::Verification("vector is not in the lattice".into()));
        }
        Ok(s.num)
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple of the denominators of `x` in lattice coordinates.
pub fn tden_coords(x: &[Rational]) -> BigInt {
    lcm_denominators(x.iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Lattice {
        Lattice::from_gram(RatMatrix::from_i64_rows(&[vec![2, 1], vec![1, 2]])).unwrap()
    }

    fn zn(n: usize) -> Lattice {
        Lattice::new(RatMatrix::identity(n)).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(zn(3).dual().unwrap().gram(), &RatMatrix::identity(3));
        let d = a2().dual().unwrap();
        assert_eq!(d.squared_determinant(), rat(1, 3));
        assert_eq!(d.dual().unwrap().gram(), a2().gram());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(zn(4).determinant().root, Some(int(1)));
        let d = a2().determinant();
        assert_eq!(d.squared, int(3));
        assert_eq!(d.root, None);
    }

    #[test]
    fn sections_and_projections() {
        let s = zn(3).orthogonal_section(&[0, 0, 1]).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.squared_determinant(), int(1));
        assert_eq!(zn(3).orthogonal_section(&[0, 0, 2]).unwrap_err(), Error::NotPrimitive("2".into()));
        assert_eq!(zn(3).orthogonal_section(&[0, 0, 0]).unwrap_err(), Error::ZeroVector);

        let p = zn(2).project_orthogonal(&[0, 1]).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.gram(), &RatMatrix::identity(1));
        let p = a2().project_orthogonal(&[1, 0]).unwrap();
        assert_eq!(p.squared_determinant(), rat(3, 2));
    }

    #[test]
    fn index2_counts() {
        assert_eq!(zn(1).index2_sublattices().count(), 1);
        assert_eq!(zn(1).index2_sublattices().next().unwrap().gram(), &RatMatrix::from_i64_rows(&[vec![4]]));
        assert_eq!(zn(1).index2_superlattices().next().unwrap().gram()[(0, 0)], rat(1, 4));
        assert_eq!(zn(2).index2_sublattices().count(), 3);
        for s in zn(2).index2_superlattices() {
            assert_eq!(s.squared_determinant(), rat(1, 4));
        }
        for n in 1..6 {
            assert_eq!(zn(n).index2_sublattices().count(), (1 << n) - 1);
            assert_eq!(zn(n).index2_superlattices().count(), (1 << n) - 1);
        }
    }

    #[test]
    fn glue_and_quotient() {
        // A2 has L*/L = Z/3.
        let q = discriminant_group(&a2()).unwrap();
        assert_eq!(q.invariant_factors, vec![BigInt::from(3)]);
        assert_eq!(a2().glue_lattice(1).unwrap(), a2());
        let full = a2().glue_lattice(3).unwrap();
        assert_eq!(full.squared_determinant(), rat(1, 3));
        assert!(matches!(a2().glue_lattice(2), Err(Error::NotDivisor(_, _))));
        let pair = SublatticePair::new(zn(2), zn(2)).unwrap();
        assert!(quotient_structure(&pair).invariant_factors.is_empty());
        // Z² ⊕ 2Z ... D4 has non-cyclic discriminant group (Z/2)².
        let d4 = Lattice::from_gram(RatMatrix::from_i64_rows(&[
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ]))
        .unwrap();
        assert!(matches!(d4.glue_lattice(2), Err(Error::NotCyclic(_))));
    }

    #[test]
    fn text_round_trip() {
        let l = a2();
        let t = l.to_text();
        assert_eq!(Lattice::from_text(&t).unwrap(), l);
        let bad = t.replace("# gram\n2/1", "# gram\n3/1");
        assert!(Lattice::from_text(&bad).is_err());
    }

    #[test]
    fn coordinate_solver() {
        let b = IntMatrix::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let s = CoordinateSolver::new(&b).unwrap();
        assert_eq!(s.solve_int(&[2, 5, 3]).unwrap(), vec![2, 3]);
        assert!(s.solve_int(&[1, 0, 0]).is_err());
        let h = s.solve(&ScaledVec { num: vec![1, 2, 1], den: 2 }).unwrap();
        assert_eq!(h, ScaledVec { num: vec![1, 1], den: 2 });
    }
}
