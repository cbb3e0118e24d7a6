use super::rational_function::RationalFunction;
use super::{Result, WeylError};

/// Linear equations `sum_j a[i][j] * u_j = b[i]` over the field of rational functions.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub unknowns: usize,
    pub rows: Vec<Vec<RationalFunction>>,
    pub rhs: Vec<RationalFunction>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<RationalFunction>, rhs: RationalFunction) {
        assert_eq!(row.len(), self.unknowns);
        self.rows.push(row);
        self.rhs.push(rhs);
    }
}

fn weight(r: &RationalFunction) -> usize {
    r.numerator().terms().len() + r.denominator().terms().len()
}

/// Solves for unknown `keep` by Gaussian elimination; fails unless that
/// unknown is uniquely determined.
pub fn eliminate_linear(sys: &LinearSystem, keep: usize) -> Result<RationalFunction> {
    let n = sys.unknowns;
    let mut rows: Vec<(Vec<RationalFunction>, RationalFunction)> =
        sys.rows.iter().cloned().zip(sys.rhs.iter().cloned()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i].0[col].is_zero())
            .min_by_key(|&i| weight(&rows[i].0[col]))
        else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[col].inverse().expect("nonzero pivot");
        let (prow, prhs) = rows[r].clone();
        let prow: Vec<RationalFunction> = prow.iter().map(|x| x.mul(&inv)).collect();
        let prhs = prhs.mul(&inv);
        for (i, (row, rhs)) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.sub(&y.mul(&f));
                }
            }
            *rhs = rhs.sub(&prhs.mul(&f));
        }
        rows[r] = (prow, prhs);
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| !rhs.is_zero()) {
        return Err(WeylError::Inconsistent);
    }
    let (row, _) = pivots.iter().find(|(_, c)| *c == keep).ok_or(WeylError::Underdetermined)?;
    let (coeffs, rhs) = &rows[*row];
    if coeffs.iter().enumerate().any(|(j, x)| j != keep && !x.is_zero()) {
        return Err(WeylError::Underdetermined);
    }
    Ok(rhs.clone())
}
