//! Smith normal form over the integers with tracked unimodular transforms.

/// `left * input * right = diag(invariant_factors, 0, ...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive invariant factors `d_1 | d_2 | ... | d_rank`.
    pub invariant_factors: Vec<i64>,
    pub rank: usize,
    pub left: Vec<Vec<i128>>,
    pub right: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k].checked_mul(b[k][j]).expect("smith overflow")).sum())
                .collect()
        })
        .collect()
}

impl SmithForm {
    /// Checks `left * m * right` is the claimed diagonal.
    pub fn certifies(&self, m: &[Vec<i64>]) -> bool {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return self.rank == 0;
        }
        let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
        let d = mat_mul(&mat_mul(&self.left, &wide), &self.right);
        (0..rows).all(|i| {
            (0..cols).all(|j| {
                let expected = if i == j && i < self.rank { i128::from(self.invariant_factors[i]) } else { 0 };
                d[i][j] == expected
            })
        })
    }
}

struct Work {
    a: Vec<Vec<i128>>,
    left: Vec<Vec<i128>>,
    right: Vec<Vec<i128>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_target -= q * row_source
    fn row_axpy(&mut self, target: usize, source: usize, q: i128) {
        for m in [&mut self.a, &mut self.left] {
            let (src, tgt) = (m[source].clone(), &mut m[target]);
            for (t, s) in tgt.iter_mut().zip(src) {
                *t -= q * s;
            }
        }
    }

    /// col_target -= q * col_source
    fn col_axpy(&mut self, target: usize, source: usize, q: i128) {
        for row in self.a.iter_mut().chain(self.right.iter_mut()) {
            row[target] -= q * row[source];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.left[i].iter_mut()) {
            *x = -*x;
        }
    }
}

/// Invariant factors and rank of an integer matrix (rows may be empty).
pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut w = Work {
        a: m.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect(),
        left: identity(rows),
        right: identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| w.a[i][j] != 0)
            .min_by_key(|&(i, j)| w.a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let p = w.a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = w.a[i][t].div_euclid(p);
                if q != 0 {
                    w.row_axpy(i, t, q);
                }
                if w.a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = w.a[t][j].div_euclid(p);
                if q != 0 {
                    w.col_axpy(j, t, q);
                }
                if w.a[t][j] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot exists in row/column t
                let (bi, bj) = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| w.a[i][j] != 0)
                    .min_by_key(|&(i, j)| w.a[i][j].abs())
                    .unwrap();
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.row_axpy(t, i, -1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..t).map(|i| i64::try_from(w.a[i][i]).expect("invariant factor overflow")).collect();
    SmithForm { invariant_factors, rank: t, left: w.left, right: w.right }
}
