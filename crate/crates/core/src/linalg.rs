//! Dense row reduction over a [`Field`].

use crate::gf::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

/// Brings `rows` to reduced row echelon form in place and drops zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(f: &Field, rows: &mut Matrix) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(r) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, r);
        let inv = f.inv(rows[top][col]).expect("pivot is nonzero");
        if inv != Elem::ONE {
            for x in rows[top][col..].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let (head, tail) = rows.split_at_mut(top);
        let (pivot, rest) = tail.split_first_mut().expect("top < len");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let c = row[col];
            if c.is_zero() {
                continue;
            }
            for (x, &p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = f.sub(*x, f.mul(c, p));
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

pub fn rank(f: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Reduces `v` against an RREF basis with the given pivots. The result is
/// zero iff `v` lies in the row space.
pub fn reduce(f: &Field, basis: &[Vec<Elem>], pivots: &[usize], v: &mut [Elem]) {
    for (row, &p) in basis.iter().zip(pivots) {
        let c = v[p];
        if c.is_zero() {
            continue;
        }
        for (x, &b) in v.iter_mut().zip(row) {
            *x = f.sub(*x, f.mul(c, b));
        }
    }
}

/// Basis of `{ y : rows · y = 0 }` in `f^ncols`.
pub fn null_space(f: &Field, rows: &[Vec<Elem>], ncols: usize) -> Matrix {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let free = (0..ncols).filter(|c| !pivots.contains(c));
    free.map(|fc| {
        let mut y = vec![Elem::ZERO; ncols];
        y[fc] = Elem::ONE;
        for (row, &p) in m.iter().zip(&pivots) {
            y[p] = f.neg(row[fc]);
        }
        y
    })
    .collect()
}

pub fn mat_mul(f: &Field, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Elem::ZERO, |acc, (&x, brow)| f.add(acc, f.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

/// `v · M` for a row vector `v`.
pub fn vec_mat(f: &Field, v: &[Elem], m: &[Vec<Elem>]) -> Vec<Elem> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Elem::ZERO; cols];
    for (&c, row) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = f.add(*o, f.mul(c, x));
        }
    }
    out
}

pub fn is_invertible(f: &Field, a: &[Vec<Elem>]) -> bool {
    a.iter().all(|r| r.len() == a.len()) && rank(f, a) == a.len()
}

/// Every `dim × len` matrix in reduced row echelon form over `f`, i.e. one
/// canonical basis for each `dim`-dimensional subspace of `f^len`.
///
/// Order: pivot sets lexicographically, then free entries as a counter with
/// the last free position varying fastest.
pub fn echelon_bases(f: &Field, dim: usize, len: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    if dim > len {
        return out;
    }
    let mut pivots: Vec<usize> = (0..dim).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..dim)
            .flat_map(|i| {
                let pv = &pivots;
                (pv[i] + 1..len).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut counter = vec![0u32; free.len()];
        loop {
            let mut m = vec![vec![Elem::ZERO; len]; dim];
            for (i, &p) in pivots.iter().enumerate() {
                m[i][p] = Elem::ONE;
            }
            for (&(i, c), &v) in free.iter().zip(&counter) {
                m[i][c] = Elem(v);
            }
            out.push(m);
            if !next_counter(&mut counter, f.order()) {
                break;
            }
        }
        if !next_combination(&mut pivots, len) {
            return out;
        }
    }
}

fn next_counter(counter: &mut [u32], base: u32) -> bool {
    for c in counter.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}
