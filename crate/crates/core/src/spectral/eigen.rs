//! Dense real-symmetric eigensolver: Householder reduction to tridiagonal
//! form followed by the implicit QL iteration with Wilkinson-style shifts
//! (the classic `tred2` / `tql2` pair).

/// Eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Row-major `n x n`; column `j` is the unit eigenvector for `values[j]`.
    pub vectors: Vec<f64>,
    pub dim: usize,
}

impl SymmetricEigen {
    pub fn vector(&self, j: usize) -> Vec<f64> {
        (0..self.dim)
            .map(|k| self.vectors[k * self.dim + j])
            .collect()
    }
}

/// QL failed to deflate an off-diagonal entry within the iteration budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoConvergence {
    pub index: usize,
    pub iterations: usize,
}

/// Decomposes the symmetric matrix `a` (row-major, `dim x dim`). Only the
/// lower triangle is read. `max_iterations` bounds the QL sweeps spent on any
/// single eigenvalue.
pub fn symmetric_eigen(
    a: &[f64],
    dim: usize,
    max_iterations: usize,
) -> Result<SymmetricEigen, NoConvergence> {
    assert_eq!(a.len(), dim * dim, "matrix is not dim x dim");
    if dim == 0 {
        return Ok(SymmetricEigen {
            values: Vec::new(),
            vectors: Vec::new(),
            dim,
        });
    }
    let mut v = a.to_vec();
    let mut d = vec![0.0; dim];
    let mut e = vec![0.0; dim];
    tridiagonalize(&mut v, &mut d, &mut e, dim);
    ql_implicit(&mut v, &mut d, &mut e, dim, max_iterations)?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0; dim * dim];
    for (col, &src) in order.iter().enumerate() {
        for k in 0..dim {
            vectors[k * dim + col] = v[k * dim + src];
        }
    }
    Ok(SymmetricEigen {
        values,
        vectors,
        dim,
    })
}

/// Householder reduction. On return `d` holds the diagonal, `e[1..]` the
/// sub-diagonal, and `v` the accumulated orthogonal transform.
fn tridiagonalize(v: &mut [f64], d: &mut [f64], e: &mut [f64], n: usize) {
    let at = |i: usize, j: usize| i * n + j;

    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }

    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for dk in d[..i].iter_mut() {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);

            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    // accumulate transformations
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let g: f64 = (0..=i).map(|k| v[at(k, i + 1)] * v[at(k, j)]).sum();
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

fn ql_implicit(
    v: &mut [f64],
    d: &mut [f64],
    e: &mut [f64],
    n: usize,
    max_iterations: usize,
) -> Result<(), NoConvergence> {
    let at = |i: usize, j: usize| i * n + j;

    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            let mut iterations = 0;
            loop {
                iterations += 1;
                if iterations > max_iterations {
                    return Err(NoConvergence {
                        index: l,
                        iterations: max_iterations,
                    });
                }

                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d[l + 2..n].iter_mut() {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[at(k, i + 1)];
                        v[at(k, i + 1)] = s * v[at(k, i)] + c * h;
                        v[at(k, i)] = c * v[at(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
