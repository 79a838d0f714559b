//! Sublattices of `Z^d` in Hermite normal form.
//!
//! A lattice taken modulo `m` is stored as the integer lattice `L + mZ^d`, so
//! membership, transferrals and completions need no separate modular code.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{s_vectors, IndexVector};
use crate::error::{Error, Result};

/// Integer lattice with a canonical basis.
///
/// Basis rows are in Hermite normal form: pivot columns strictly increase,
/// pivots are positive, entries above a pivot lie in `0..pivot`, and entries
/// left of a row's pivot are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntegerLattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
    modulus: Option<u64>,
}

fn hnf(mut m: Vec<Vec<i128>>, dim: usize) -> Vec<Vec<i128>> {
    m.retain(|row| row.iter().any(|&x| x != 0));
    let mut r = 0;
    for col in 0..dim {
        if r == m.len() {
            break;
        }
        // Euclid on the column until a single nonzero entry remains at row r
        loop {
            let pivot = (r..m.len())
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].abs());
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut clean = true;
            for i in r + 1..m.len() {
                let q = m[i][col] / m[r][col];
                if q != 0 {
                    for j in col..dim {
                        m[i][j] -= q * m[r][j];
                    }
                }
                clean &= m[i][col] == 0;
            }
            if clean {
                break;
            }
        }
        if m[r][col] == 0 {
            continue;
        }
        if m[r][col] < 0 {
            for x in m[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = m[i][col].div_euclid(m[r][col]);
            if q != 0 {
                for j in col..dim {
                    m[i][j] -= q * m[r][j];
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

fn pivot_col(row: &[i64]) -> usize {
    row.iter().position(|&x| x != 0).expect("basis rows are nonzero")
}

impl IntegerLattice {
    /// The lattice generated by `vectors`, each of length `dim`. With a
    /// modulus `m ≥ 2` the result is the span together with `mZ^d`.
    pub fn span<V: AsRef<[i64]>>(vectors: &[V], dim: usize, modulus: Option<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("lattice dimension must be positive"));
        }
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(vectors.len() + dim);
        for v in vectors {
            let v = v.as_ref();
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            rows.push(v.iter().map(|&x| x as i128).collect());
        }
        if let Some(m) = modulus {
            if m < 2 {
                return Err(Error::invalid(format!("modulus must be at least 2, got {m}")));
            }
            for j in 0..dim {
                let mut row = vec![0i128; dim];
                row[j] = m as i128;
                rows.push(row);
            }
        }
        let basis = hnf(rows, dim)
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| i64::try_from(x).map_err(|_| Error::invalid("lattice entry overflows i64")))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self { dim, basis, modulus })
    }

    /// `Z^d`.
    pub fn integer(dim: usize) -> Result<Self> {
        let units: Vec<IndexVector> = (0..dim).map(|j| IndexVector::unit(dim, j)).collect();
        Self::span(&units, dim, None)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `[Z^d : L]`, or `None` when the rank is below `d`.
    pub fn determinant(&self) -> Option<u128> {
        (self.rank() == self.dim).then(|| {
            self.basis
                .iter()
                .map(|row| row[pivot_col(row)] as u128)
                .product()
        })
    }

    /// Exact membership by back-substitution against the basis.
    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut cur: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for row in &self.basis {
            let c = pivot_col(row);
            if cur[..c].iter().any(|&x| x != 0) {
                return Ok(false);
            }
            let p = row[c] as i128;
            if cur[c] % p != 0 {
                return Ok(false);
            }
            let q = cur[c] / p;
            for (x, &b) in cur.iter_mut().zip(row).skip(c) {
                *x -= q * b as i128;
            }
        }
        Ok(cur.iter().all(|&x| x == 0))
    }

    pub fn contains_vector(&self, v: &IndexVector) -> Result<bool> {
        self.contains(v.coords())
    }
}

impl fmt::Display for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "[0; {}]", self.dim);
        }
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Free-function form of [`IntegerLattice::span`].
pub fn lattice_span<V: AsRef<[i64]>>(vectors: &[V], d: usize, modulus: Option<u64>) -> Result<IntegerLattice> {
    IntegerLattice::span(vectors, d, modulus)
}

/// The lattice generated by all `k`-vectors of dimension `d`, that is
/// `{v : k divides the coordinate sum}`.
pub fn max_lattice(d: usize, k: usize) -> Result<IntegerLattice> {
    if d == 0 || k == 0 {
        return Err(Error::invalid("max lattice needs d, k ≥ 1"));
    }
    let mut gens: Vec<Vec<i64>> = (0..d.saturating_sub(1))
        .map(|j| {
            let mut v = vec![0; d];
            v[j] = 1;
            v[d - 1] = -1;
            v
        })
        .collect();
    let mut last = vec![0; d];
    last[d - 1] = k as i64;
    gens.push(last);
    IntegerLattice::span(&gens, d, None)
}

/// The first transferral `u_i − u_j` (0-based, `i != j`) lying in `l`.
pub fn transferral_violation(l: &IntegerLattice) -> Option<(usize, usize)> {
    let d = l.dim();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let mut t = vec![0; d];
            t[i] = 1;
            t[j] = -1;
            if l.contains(&t).expect("dimension matches") {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_transferral_free(l: &IntegerLattice) -> bool {
    transferral_violation(l).is_none()
}

/// The first `(k−1)`-vector `v` with `v + u_i ∉ l` for every `i`.
pub fn missing_completion(l: &IntegerLattice, k: usize) -> Result<Option<IndexVector>> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let d = l.dim();
    for v in s_vectors(d, k - 1) {
        let mut completes = false;
        for i in 0..d {
            if l.contains_vector(&v.add(&IndexVector::unit(d, i)))? {
                completes = true;
                break;
            }
        }
        if !completes {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Transferral-free, and every `(k−1)`-vector completes into `l` by a unit vector.
pub fn is_full(l: &IntegerLattice, k: usize) -> Result<bool> {
    Ok(is_transferral_free(l) && missing_completion(l, k)?.is_none())
}

/// Order of a coset group; infinite when the lattice has deficient rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for CosetOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetOrder::Finite(n) => write!(f, "{n}"),
            CosetOrder::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for CosetOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CosetOrder::Finite(n) => s.serialize_u64(*n),
            CosetOrder::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Structure of `L_max / L`: invariant factors above 1 plus the free rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetGroup {
    pub order: CosetOrder,
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

/// Diagonal of the Smith normal form, nonzero entries only, each dividing the next.
fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                // a remainder smaller than the pivot is left; make it the pivot
                let in_col = (t + 1..rows).filter(|&i| a[i][t] != 0).min_by_key(|&i| a[i][t].abs());
                let in_row = (t + 1..cols).filter(|&j| a[t][j] != 0).min_by_key(|&j| a[t][j].abs());
                match (in_col, in_row) {
                    (Some(i), Some(j)) if a[t][j].abs() < a[i][t].abs() => swap_cols(&mut a, t, j),
                    (Some(i), _) => a.swap(t, i),
                    (None, Some(j)) => swap_cols(&mut a, t, j),
                    (None, None) => unreachable!("dirty implies a nonzero entry"),
                }
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn swap_cols(a: &mut [Vec<i128>], x: usize, y: usize) {
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}

/// `L_max / L` for a lattice generated by `k`-vectors.
///
/// Basis rows are rewritten in the basis `u_i − u_d (i < d), k·u_d` of
/// `L_max`; the Smith form of the result gives the invariant factors.
pub fn coset_group(l: &IntegerLattice, k: usize) -> Result<CosetGroup> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let d = l.dim();
    let k = k as i128;
    let mut coords = Vec::with_capacity(l.rank());
    for row in l.basis() {
        let sum: i128 = row.iter().map(|&x| x as i128).sum();
        if sum.rem_euclid(k) != 0 {
            return Err(Error::invalid(format!(
                "basis row {row:?} has coordinate sum {sum}, not divisible by {k}"
            )));
        }
        let mut c: Vec<i128> = row[..d - 1].iter().map(|&x| x as i128).collect();
        c.push(sum / k);
        coords.push(c);
    }
    let diag = smith_diagonal(coords);
    let free_rank = d - diag.len();
    let torsion: Vec<u64> = diag.iter().filter(|&&x| x > 1).map(|&x| x as u64).collect();
    let order = if free_rank > 0 {
        CosetOrder::Infinite
    } else {
        CosetOrder::Finite(torsion.iter().product())
    };
    Ok(CosetGroup {
        order,
        torsion,
        free_rank,
    })
}

/// `|L_max / L|`.
pub fn coset_group_order(l: &IntegerLattice, k: usize) -> Result<CosetOrder> {
    Ok(coset_group(l, k)?.order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(vs: &[&[i64]], d: usize) -> IntegerLattice {
        IntegerLattice::span(vs, d, None).unwrap()
    }

    #[test]
    fn hnf_shape() {
        let l = span(&[&[3, 0], &[0, 3], &[1, 1]], 2);
        assert_eq!(l.basis(), &[vec![1, 1], vec![0, 3]]);
        assert_eq!(l.determinant(), Some(3));
    }

    #[test]
    fn zero_lattice() {
        let l = IntegerLattice::span::<Vec<i64>>(&[], 3, None).unwrap();
        assert_eq!(l.rank(), 0);
        assert!(l.contains(&[0, 0, 0]).unwrap());
        assert!(!l.contains(&[0, 1, 0]).unwrap());
        assert!(matches!(
            l.contains(&[0, 0]),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn two_part_lattice_membership() {
        let l = span(&[&[0, 3], &[2, 1]], 2);
        assert!(l.contains(&[0, 3]).unwrap());
        assert!(l.contains(&[2, 1]).unwrap());
        assert!(!l.contains(&[3, 0]).unwrap());
        assert!(!l.contains(&[1, 2]).unwrap());
        assert!(is_transferral_free(&l));
        assert!(is_full(&l, 3).unwrap());
        assert_eq!(coset_group_order(&l, 3).unwrap(), CosetOrder::Finite(2));
    }

    #[test]
    fn modular_span() {
        let l = IntegerLattice::span(&[[1, 0, 0], [0, 1, 1]], 3, Some(3)).unwrap();
        assert!(l.contains(&[1, 2, 2]).unwrap());
        assert!(l.contains(&[3, 0, 0]).unwrap());
        assert!(!l.contains(&[0, 0, 1]).unwrap());
        assert!(is_transferral_free(&l));
        assert!(IntegerLattice::span(&[[1]], 1, Some(1)).is_err());
    }

    #[test]
    fn integer_lattice_has_transferrals() {
        let l = IntegerLattice::integer(3).unwrap();
        assert_eq!(transferral_violation(&l), Some((0, 1)));
        assert!(!is_full(&l, 3).unwrap());
    }

    #[test]
    fn max_lattice_has_trivial_coset_group() {
        for d in 1..5 {
            for k in 2..5 {
                let l = max_lattice(d, k).unwrap();
                assert_eq!(l.determinant(), Some(k as u128));
                let g = coset_group(&l, k).unwrap();
                assert_eq!(g.order, CosetOrder::Finite(1));
                assert!(g.torsion.is_empty());
            }
        }
    }

    #[test]
    fn rank_deficient_is_infinite() {
        let l = span(&[&[3, 0, 0]], 3);
        let g = coset_group(&l, 3).unwrap();
        assert_eq!(g.order, CosetOrder::Infinite);
        assert_eq!(g.free_rank, 2);
        assert_eq!(serde_json::to_string(&g.order).unwrap(), "\"infinity\"");
    }

    #[test]
    fn coset_group_needs_k_vectors() {
        let l = span(&[&[1, 0]], 2);
        assert!(coset_group(&l, 3).is_err());
    }

    #[test]
    fn smith_divisibility_chain() {
        // diag(2, 3) is equivalent to diag(1, 6)
        let d = smith_diagonal(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(d, vec![1, 6]);
        let d = smith_diagonal(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(d, vec![2, 6, 12]);
    }
}
