//! Dense exact linear algebra on row vectors.
//!
//! Matrices are `Vec<Vec<Scalar>>` of row vectors over one field. Echelon
//! results are always in reduced row echelon form with zero rows removed, so
//! two spanning sets of the same space produce identical output.

use crate::scalar::{FieldSpec, Scalar};

/// Index of the first nonzero entry.
pub fn pivot(row: &[Scalar]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn zero_vector(field: FieldSpec, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn add_assign(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + b;
        }
    }
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// Reduced row echelon form of the span of `rows`, zero rows dropped.
pub fn rref(mut rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank][col].checked_inv().expect("pivot is nonzero");
        let normalized = scale(&inv, &rows[rank]);
        rows[rank] = normalized;
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = -&rows[r][col];
                let pivot_row = rows[rank].clone();
                axpy(&mut rows[r], &factor, &pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` is in the span.
pub fn reduce(basis: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for row in basis {
        let p = pivot(row).expect("rref rows are nonzero");
        if !out[p].is_zero() {
            let factor = -&out[p];
            axpy(&mut out, &factor, row);
        }
    }
    out
}

pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    is_zero_vector(&reduce(basis, v))
}

/// Coefficients of `v` in terms of an RREF basis, if `v` lies in its span.
pub fn coordinates(basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if !in_span(basis, v) {
        return None;
    }
    Some(
        basis
            .iter()
            .map(|row| v[pivot(row).expect("nonzero row")].clone())
            .collect(),
    )
}

/// RREF basis of `{x : M x = 0}` where `M` has the given rows and `ncols` columns.
pub fn nullspace(field: FieldSpec, matrix: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let reduced = rref(matrix.to_vec());
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|r| pivot(r).expect("nonzero row"))
        .collect();
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = unit_vector(field, ncols, free);
        for (row, &p) in reduced.iter().zip(&pivots) {
            x[p] = -&row[free];
        }
        kernel.push(x);
    }
    rref(kernel)
}

/// RREF basis of `span(u) + span(v)`.
pub fn sum(u: &[Vec<Scalar>], v: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    rref(u.iter().chain(v).cloned().collect())
}

/// RREF basis of `span(u) ∩ span(v)` inside an `n`-dimensional space.
pub fn intersect(
    field: FieldSpec,
    u: &[Vec<Scalar>],
    v: &[Vec<Scalar>],
    n: usize,
) -> Vec<Vec<Scalar>> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    // Solve sum_i a_i u_i - sum_j b_j v_j = 0; columns are the generators.
    let k = u.len() + v.len();
    let system: Vec<Vec<Scalar>> = (0..n)
        .map(|c| {
            u.iter()
                .map(|r| r[c].clone())
                .chain(v.iter().map(|r| -&r[c]))
                .collect()
        })
        .collect();
    let kernel = nullspace(field, &system, k);
    let vectors = kernel
        .iter()
        .map(|coeffs| {
            let mut acc = zero_vector(field, n);
            for (c, row) in coeffs.iter().zip(u) {
                axpy(&mut acc, c, row);
            }
            acc
        })
        .collect();
    rref(vectors)
}

/// Complement of `span(u)` inside `span(w)`: the rows of `w` reduced modulo
/// `u`, then row reduced. Requires `span(u) ⊆ span(w)`.
pub fn complement(u: &[Vec<Scalar>], w: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    rref(w.iter().map(|row| reduce(u, row)).collect())
}

pub fn is_subspace(u: &[Vec<Scalar>], w: &[Vec<Scalar>]) -> bool {
    u.iter().all(|row| in_span(w, row))
}

/// Coefficients `x` with `sum_i x_i rows_i = v`, if any (free variables set to zero).
pub fn solve_combination(
    field: FieldSpec,
    rows: &[Vec<Scalar>],
    v: &[Scalar],
) -> Option<Vec<Scalar>> {
    let n = rows.len();
    let augmented: Vec<Vec<Scalar>> = (0..v.len())
        .map(|k| {
            rows.iter()
                .map(|r| r[k].clone())
                .chain(std::iter::once(v[k].clone()))
                .collect()
        })
        .collect();
    let reduced = rref(augmented);
    let mut x = zero_vector(field, n);
    for row in &reduced {
        let p = pivot(row).expect("nonzero row");
        if p == n {
            return None;
        }
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Matrix-vector product `M v` for `M` given by rows.
pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            let mut acc = field.zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(field: FieldSpec, m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let augmented: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit_vector(field, n, i));
            r
        })
        .collect();
    let reduced = rref(augmented);
    if reduced.len() < n || (0..n).any(|i| pivot(&reduced[i]) != Some(i)) {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter()
            .map(|&x| FieldSpec::rational().from_i64(x))
            .collect()
    }

    #[test]
    fn rref_normalizes() {
        assert_eq!(rref(vec![q(&[2, 4])]), vec![q(&[1, 2])]);
        assert_eq!(
            rref(vec![q(&[1, 0]), q(&[1, 1])]),
            vec![q(&[1, 0]), q(&[0, 1])]
        );
        assert!(rref(vec![q(&[0, 0])]).is_empty());
    }

    #[test]
    fn distinct_lines() {
        let f = FieldSpec::rational();
        let a = vec![q(&[1, 0])];
        let b = vec![q(&[1, 1])];
        assert_eq!(sum(&a, &b).len(), 2);
        assert!(intersect(f, &a, &b, 2).is_empty());
        assert_eq!(intersect(f, &a, &a, 2), a);
    }

    #[test]
    fn lowest_index_complement() {
        let u = rref(vec![q(&[1, 1])]);
        let w = vec![q(&[1, 0]), q(&[0, 1])];
        assert_eq!(complement(&u, &w), vec![q(&[0, 1])]);
        assert_eq!(complement(&[], &w), w);
        assert!(complement(&w, &w).is_empty());
    }

    #[test]
    fn kernel_and_inverse() {
        let f = FieldSpec::rational();
        let k = nullspace(f, &[q(&[1, 2, 3])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&[q(&[1, 2, 3])], v, f)[0].is_zero());
        }
        let m = vec![q(&[2, 1]), q(&[1, 1])];
        let inv = invert(f, &m).unwrap();
        assert_eq!(inv, vec![q(&[1, -1]), q(&[-1, 2])]);
        assert!(invert(f, &[q(&[1, 1]), q(&[2, 2])]).is_none());
    }

    #[test]
    fn combinations() {
        let f = FieldSpec::rational();
        let rows = vec![q(&[1, 1, 0]), q(&[0, 1, 1])];
        assert_eq!(
            solve_combination(f, &rows, &q(&[2, 5, 3])),
            Some(q(&[2, 3]))
        );
        assert_eq!(solve_combination(f, &rows, &q(&[1, 0, 0])), None);
        assert_eq!(solve_combination(f, &[], &q(&[0, 0])), Some(vec![]));
    }

    fn arb_rows(n: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
        let f = FieldSpec::prime(5).unwrap();
        proptest::collection::vec(proptest::collection::vec(0i64..5, n), 0..4).prop_map(
            move |rows| {
                rows.into_iter()
                    .map(|r| r.into_iter().map(|x| f.from_i64(x)).collect())
                    .collect()
            },
        )
    }

    proptest! {
        #[test]
        fn dimension_formula(u in arb_rows(3), v in arb_rows(3)) {
            let f = FieldSpec::prime(5).unwrap();
            let (u, v) = (rref(u), rref(v));
            let s = sum(&u, &v);
            let i = intersect(f, &u, &v, 3);
            prop_assert_eq!(s.len() + i.len(), u.len() + v.len());
            prop_assert!(is_subspace(&i, &u) && is_subspace(&i, &v));
            // (U + W) ∩ W = W
            prop_assert_eq!(intersect(f, &s, &v, 3), v.clone());
        }

        #[test]
        fn rref_is_canonical(u in arb_rows(4), extra in arb_rows(4)) {
            let base = rref(u);
            // adding vectors from the span does not change the echelon form
            let mut spanning = base.clone();
            for (i, row) in extra.iter().enumerate() {
                if let Some(b) = base.get(i % base.len().max(1)) {
                    let mut combo = b.clone();
                    add_assign(&mut combo, &reduce(&[], &scale(&row[0], b)));
                    spanning.push(combo);
                }
            }
            spanning.reverse();
            prop_assert_eq!(rref(spanning), base);
        }

        #[test]
        fn complement_is_direct(u in arb_rows(3), w in arb_rows(3)) {
            let f = FieldSpec::prime(5).unwrap();
            let w = sum(&u, &w);
            let u = rref(u);
            let c = complement(&u, &w);
            prop_assert!(intersect(f, &c, &u, 3).is_empty());
            prop_assert_eq!(sum(&c, &u), w);
        }
    }
}
