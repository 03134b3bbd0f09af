use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::{IntMatrix, SparseMatrix};

/// Smith normal form `U * A * V = D` with unimodular `U`, `V`.
///
/// `diag` holds the nonzero invariant factors `d_0 | d_1 | ...`, all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// A basis of the integer kernel `{x : A x = 0}`, as columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        let r = self.rank();
        let cols: Vec<Vec<BigInt>> = (r..self.cols).map(|j| self.v.column(j)).collect();
        IntMatrix::from_columns(self.cols, &cols)
    }

    /// An integer solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let c = self.u.mul_vec(b);
        let r = self.rank();
        let mut y = vec![<BigInt as Zero>::zero(); self.cols];
        for i in 0..self.rows {
            if i < r {
                if !Zero::is_zero(&(&c[i] % &self.diag[i])) {
                    return None;
                }
                y[i] = &c[i] / &self.diag[i];
            } else if !Zero::is_zero(&c[i]) {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Dense<T> {
    a: Vec<Vec<T>>,
    rows: usize,
    cols: usize,
    u: Option<(Vec<Vec<T>>, Vec<Vec<T>>)>,
    v: Option<Vec<Vec<T>>>,
}

fn identity<T: Coeff>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

fn axpy<T: Coeff>(dst: &mut [T], src: &[T], q: &T) -> Option<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.sub(&q.mul(s)?)?;
        }
    }
    Some(())
}

impl<T: Coeff> Dense<T> {
    fn new(a: Vec<Vec<T>>, rows: usize, cols: usize, transforms: bool) -> Self {
        Dense {
            a,
            rows,
            cols,
            u: transforms.then(|| (identity(rows), identity(rows))),
            v: transforms.then(|| identity(cols)),
        }
    }

    // row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        let src = self.a[t].clone();
        axpy(&mut self.a[i], &src, q)?;
        if let Some((u, u_inv)) = &mut self.u {
            let src = u[t].clone();
            axpy(&mut u[i], &src, q)?;
            // inverse: col_t += q * col_i
            for row in u_inv.iter_mut() {
                if !row[i].is_zero() {
                    row[t] = row[t].add(&q.mul(&row[i])?)?;
                }
            }
        }
        Some(())
    }

    // row_t += row_i
    fn row_add(&mut self, t: usize, i: usize) -> Option<()> {
        let minus_one = T::one().neg()?;
        self.row_axpy(t, i, &minus_one)
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some((u, u_inv)) = &mut self.u {
            u.swap(i, j);
            for row in u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn row_neg(&mut self, i: usize) -> Option<()> {
        for x in self.a[i].iter_mut() {
            *x = x.neg()?;
        }
        if let Some((u, u_inv)) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = x.neg()?;
            }
            for row in u_inv.iter_mut() {
                row[i] = row[i].neg()?;
            }
        }
        Some(())
    }

    // col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                row[j] = row[j].sub(&q.mul(&row[t])?)?;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = row[j].sub(&q.mul(&row[t])?)?;
                }
            }
        }
        Some(())
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u128, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if !x.is_zero() {
                    let m = x.magnitude();
                    if best.is_none_or(|b| m < b.0) {
                        best = Some((m, i, j));
                        if m == 1 {
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Reduces to diagonal form in place and returns the rank.
    fn reduce(&mut self) -> Option<usize> {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_axpy(i, t, &q)?;
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_axpy(j, t, &q)?;
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // a smaller remainder sits in row or column t; move it to the pivot
                    let mut best = (self.a[t][t].magnitude(), t, t);
                    for i in t + 1..self.rows {
                        let m = self.a[i][t].magnitude();
                        if m != 0 && m < best.0 {
                            best = (m, i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let m = self.a[t][j].magnitude();
                        if m != 0 && m < best.0 {
                            best = (m, t, j);
                        }
                    }
                    self.row_swap(t, best.1);
                    self.col_swap(t, best.2);
                    continue;
                }
                // divisibility of the remaining block by the pivot
                let p = self.a[t][t].clone();
                let bad_row = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad_row {
                    Some(i) => self.row_add(t, i)?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_neg(t)?;
            }
            t += 1;
        }
        Some(t)
    }
}

fn dense_factors<T: Coeff>(a: Vec<Vec<T>>, rows: usize, cols: usize) -> Option<Vec<BigInt>> {
    let mut d = Dense::new(a, rows, cols, false);
    let r = d.reduce()?;
    Some((0..r).map(|i| d.a[i][i].to_bigint()).collect())
}

/// Full Smith normal form with transforms, in arbitrary precision.
pub fn smith(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = Dense::new(m.clone().into_data(), rows, cols, true);
    let r = d.reduce().expect("arbitrary precision cannot overflow");
    let diag = (0..r).map(|i| d.a[i][i].clone()).collect();
    let (u, u_inv) = d.u.take().unwrap();
    let v = d.v.take().unwrap();
    Smith {
        diag,
        u: IntMatrix::from_rows_sized(rows, rows, u),
        u_inv: IntMatrix::from_rows_sized(rows, rows, u_inv),
        v: IntMatrix::from_rows_sized(cols, cols, v),
        rows,
        cols,
    }
}

/// Eliminates every unit pivot sparsely, then finishes the remaining block
/// densely. Returns the nonzero invariant factors.
fn sparse_factors<T: Coeff>(m: &SparseMatrix) -> Option<Vec<BigInt>> {
    let mut rows: Vec<Option<BTreeMap<usize, T>>> = vec![Some(BTreeMap::new()); m.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, c, v) in m.entries() {
        rows[r].as_mut().unwrap().insert(c, T::from_i64(v));
        cols[c].insert(r);
    }
    let mut units = 0usize;
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..m.cols() {
            let pivot_row = cols[c]
                .iter()
                .filter(|r| rows[**r].as_ref().unwrap()[&c].is_unit())
                .min_by_key(|r| rows[**r].as_ref().unwrap().len())
                .copied();
            let Some(pr) = pivot_row else { continue };
            let prow = rows[pr].take().unwrap();
            for j in prow.keys() {
                cols[*j].remove(&pr);
            }
            let p = prow[&c].clone();
            let others: Vec<usize> = cols[c].iter().copied().collect();
            for i in others {
                let row = rows[i].as_mut().unwrap();
                // p is a unit, so p^-1 = p
                let f = row[&c].mul(&p)?;
                for (j, v) in prow.iter() {
                    let cur = row.get(j).cloned().unwrap_or_else(T::zero);
                    let new = cur.sub(&f.mul(v)?)?;
                    if new.is_zero() {
                        row.remove(j);
                        cols[*j].remove(&i);
                    } else {
                        row.insert(*j, new);
                        cols[*j].insert(i);
                    }
                }
            }
            units += 1;
            progress = true;
        }
    }
    let live_rows: Vec<&BTreeMap<usize, T>> =
        rows.iter().flatten().filter(|r| !r.is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|c| !cols[*c].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut dense = vec![vec![T::zero(); live_cols.len()]; live_rows.len()];
    for (i, row) in live_rows.iter().enumerate() {
        for (c, v) in row.iter() {
            dense[i][col_pos[c]] = v.clone();
        }
    }
    let tail = dense_factors(dense, live_rows.len(), live_cols.len())?;
    let mut out = vec![<BigInt as One>::one(); units];
    out.extend(tail);
    Some(out)
}

/// Nonzero invariant factors of `m`, computed exactly. Machine integers are
/// tried first; on overflow the computation restarts with big integers.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    sparse_factors::<i64>(m)
        .or_else(|| sparse_factors::<BigInt>(m))
        .expect("arbitrary precision cannot overflow")
}

pub fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

impl IntMatrix {
    fn from_rows_sized(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        if rows == 0 {
            return IntMatrix::zeros(0, cols);
        }
        let m = IntMatrix::from_rows(data);
        debug_assert_eq!(m.cols(), cols);
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_i64(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn diagonalizes_with_divisibility() {
        let a = dense_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diag, vec![2.into(), 6.into(), 12.into()]);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { s.diag[i].clone() } else { <BigInt as Zero>::zero() };
                assert_eq!(d.get(i, j), &expect);
            }
        }
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(3));
    }

    #[test]
    fn kernel_and_solve() {
        let a = dense_i64(&[vec![1, 1, 0], vec![0, 2, 2]]);
        let s = smith(&a);
        let k = s.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let b: Vec<BigInt> = vec![3.into(), 4.into()];
        let x = s.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        // 2 * x2 + 2 * x3 = 3 has no integer solution
        assert!(s.solve(&[0.into(), 3.into()]).is_none());
    }

    #[test]
    fn sparse_matches_dense() {
        let mut m = SparseMatrix::new(3, 3);
        for (r, c, v) in [(0, 0, 2), (0, 1, 4), (0, 2, 4), (1, 0, -6), (1, 1, 6), (1, 2, 12), (2, 0, 10), (2, 1, -4), (2, 2, -16)] {
            m.push(r, c, v);
        }
        assert_eq!(invariant_factors(&m), smith(&m.to_dense()).diag);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let mut m = SparseMatrix::new(2, 2);
        m.push(0, 0, big);
        m.push(0, 1, big - 1);
        m.push(1, 0, big - 3);
        m.push(1, 1, big);
        let f = invariant_factors(&m);
        let s = smith(&m.to_dense());
        assert_eq!(f, s.diag);
    }
}
