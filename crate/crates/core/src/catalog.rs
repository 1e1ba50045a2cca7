//! Built-in lattices addressed by name.

use crate::enumerate::shortest_vectors;
use crate::error::{Error, Result};
use crate::lattice::{lattice_basis_from_generators, Lattice};
use crate::matrix::RatMatrix;
use crate::rational::{int, rat, RatVec};

pub fn zn(n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::Dimension("rank must be positive".into()));
    }
    Lattice::new(RatMatrix::identity(n))
}

/// `A_n` as the vectors of coordinate sum zero in `Z^{n+1}`.
pub fn an(n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::Dimension("rank must be positive".into()));
    }
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n + 1];
            r[i] = 1;
            r[i + 1] = -1;
            r
        })
        .collect();
    Lattice::from_i64_basis(&rows)
}

/// `D_n`: integer vectors with even coordinate sum.
pub fn dn(n: usize) -> Result<Lattice> {
    if n < 2 {
        return Err(Error::Dimension("D_n needs n ≥ 2".into()));
    }
    let mut rows: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r[i + 1] = -1;
            r
        })
        .collect();
    let mut last = vec![0; n];
    last[n - 2] = 1;
    last[n - 1] = 1;
    rows.push(last);
    Lattice::from_i64_basis(&rows)
}

/// `E_8 = D_8 ∪ (D_8 + (½)⁸)`.
pub fn e8() -> Result<Lattice> {
    let d8 = dn(8)?;
    let mut gens: Vec<RatVec> = d8.basis().to_rows();
    gens.push(vec![rat(1, 2); 8]);
    Lattice::new(lattice_basis_from_generators(&RatMatrix::from_rows(gens)?))
}

/// `E_7`: the vectors of `E_8` orthogonal to one root.
pub fn e7() -> Result<Lattice> {
    let e = e8()?;
    let (_, roots) = shortest_vectors(&e)?;
    let (l, _) = e.orthogonal_section_coeffs(&[roots[0].clone()])?;
    Ok(l)
}

/// `E_6`: the vectors of `E_8` orthogonal to an `A_2` pair of roots.
pub fn e6() -> Result<Lattice> {
    let e = e8()?;
    let (_, roots) = shortest_vectors(&e)?;
    let r1 = &roots[0];
    let r2 = roots
        .iter()
        .find(|r| e.inner(&crate::rational::ints_to_rats(r), &crate::rational::ints_to_rats(r1)) == int(-1))
        .ok_or_else(|| Error::Verification("no A2 pair among E8 roots".into()))?;
    let (l, _) = e.orthogonal_section_coeffs(&[r1.clone(), r2.clone()])?;
    Ok(l)
}

/// Resolves the small catalog names; the Leech family lives in [`crate::leech`].
pub fn small_lattice(name: &str) -> Result<Lattice> {
    let parse_n = |s: &str| s.parse::<usize>().map_err(|_| Error::UnknownLattice(name.to_string()));
    match name {
        "e6" => e6(),
        "e7" => e7(),
        "e8" => e8(),
        _ => match name.split_once(':') {
            Some(("an", n)) => an(parse_n(n)?),
            Some(("dn", n)) => dn(parse_n(n)?),
            Some(("zn", n)) => zn(parse_n(n)?),
            _ => Err(Error::UnknownLattice(name.to_string())),
        },
    }
}

/// Every catalog name: the small families plus `leech`, `lambda23`, `o23`, `lambda23dual`.
pub fn lattice_by_name(name: &str) -> Result<Lattice> {
    match crate::leech::leech_catalog(name)? {
        Some(l) => Ok(l),
        None => small_lattice(name),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(l: &Lattice) -> (crate::rational::Rational, usize) {
        let (n, v) = shortest_vectors(l).unwrap();
        (n, v.len())
    }

    #[test]
    fn root_counts() {
        assert_eq!(roots(&an(2).unwrap()), (int(2), 6));
        assert_eq!(roots(&an(3).unwrap()), (int(2), 12));
        assert_eq!(roots(&dn(4).unwrap()), (int(2), 24));
        assert_eq!(roots(&e8().unwrap()), (int(2), 240));
        assert_eq!(roots(&e7().unwrap()), (int(2), 126));
        assert_eq!(roots(&e6().unwrap()), (int(2), 72));
    }

    #[test]
    fn determinants() {
        assert_eq!(e8().unwrap().squared_determinant(), int(1));
        assert_eq!(e7().unwrap().squared_determinant(), int(2));
        assert_eq!(e6().unwrap().squared_determinant(), int(3));
        assert_eq!(an(3).unwrap().squared_determinant(), int(4));
        assert!(e8().unwrap().is_even());
    }

    #[test]
    fn names() {
        assert_eq!(small_lattice("zn:3").unwrap().rank(), 3);
        assert_eq!(small_lattice("an:2").unwrap().rank(), 2);
        assert!(matches!(small_lattice("bogus"), Err(Error::UnknownLattice(_))));
        assert!(small_lattice("zn:x").is_err());
    }
}
