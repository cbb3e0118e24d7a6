use std::cmp::Ordering;

/// Order on exponent vectors `(a, b)` of `x^a d^b`, as vectors of length `2m`
/// with variables ranked `x1 > ... > xm > d1 > ... > dm`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    /// Monomials are first compared by their degree in the listed variables
    /// (indices into the `2m` exponent vector), then by grevlex.
    BlockElimination(Vec<usize>),
}

/// How module positions combine with monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PositionOrder {
    /// Monomial first; ties broken by position (lower index is larger).
    TermOverPosition,
    /// Position first, ranked by the list (first entry is largest); positions
    /// missing from the list rank below, lower index larger.
    PositionOverTerm(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub monomial: MonomialOrder,
    pub position: PositionOrder,
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder {
            monomial: MonomialOrder::Grevlex,
            position: PositionOrder::TermOverPosition,
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    pub fn grevlex() -> Self {
        Self::default()
    }

    pub fn position_over_term(priority: Vec<usize>) -> Self {
        TermOrder {
            monomial: MonomialOrder::Grevlex,
            position: PositionOrder::PositionOverTerm(priority),
        }
    }

    pub fn elimination(block: Vec<usize>) -> Self {
        TermOrder {
            monomial: MonomialOrder::BlockElimination(block),
            position: PositionOrder::TermOverPosition,
        }
    }

    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        match &self.monomial {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::BlockElimination(block) => {
                let wa: u32 = block.iter().map(|&i| a[i]).sum();
                let wb: u32 = block.iter().map(|&i| b[i]).sum();
                wa.cmp(&wb).then_with(|| grevlex(a, b))
            }
        }
    }

    fn position_rank(&self, p: usize) -> (usize, usize) {
        match &self.position {
            PositionOrder::TermOverPosition => (0, p),
            PositionOrder::PositionOverTerm(list) => match list.iter().position(|&q| q == p) {
                Some(i) => (0, i),
                None => (1, p),
            },
        }
    }

    /// Compares module terms `(position, exponents)`; `Greater` means larger.
    pub fn cmp_terms(&self, (pa, a): (usize, &[u32]), (pb, b): (usize, &[u32])) -> Ordering {
        // smaller rank is larger
        let pos = self.position_rank(pb).cmp(&self.position_rank(pa));
        match self.position {
            PositionOrder::TermOverPosition => self.cmp_monomials(a, b).then(pos),
            PositionOrder::PositionOverTerm(_) => pos.then_with(|| self.cmp_monomials(a, b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let o = TermOrder::grevlex();
        // x1 > x2, and degree dominates
        assert_eq!(o.cmp_monomials(&[1, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(o.cmp_monomials(&[0, 2], &[1, 0]), Ordering::Greater);
        // x1*x3 < x2^2 in grevlex
        assert_eq!(o.cmp_monomials(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn positions() {
        let top = TermOrder::grevlex();
        assert_eq!(top.cmp_terms((0, &[1]), (1, &[1])), Ordering::Greater);
        assert_eq!(top.cmp_terms((1, &[2]), (0, &[1])), Ordering::Greater);
        let pot = TermOrder::position_over_term(vec![1, 0]);
        assert_eq!(pot.cmp_terms((1, &[0]), (0, &[5])), Ordering::Greater);
    }
}
