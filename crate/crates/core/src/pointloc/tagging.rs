//! SegTest and the cell tagging procedures, in a literal per-cell form and a
//! batched per-grid-line form that produces identical edge results.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::zpoly::ZPoly;
use crate::algebra::{restrict_characteristic_exact, ExactNetwork, RationalUniPoly, SturmChain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellTag {
    Minus,
    Plus,
    Question,
}

impl CellTag {
    pub fn bits(self) -> u8 {
        match self {
            CellTag::Minus => 0b00,
            CellTag::Plus => 0b01,
            CellTag::Question => 0b10,
        }
    }

    pub fn from_bits(b: u8) -> Option<Self> {
        match b {
            0b00 => Some(CellTag::Minus),
            0b01 => Some(CellTag::Plus),
            0b10 => Some(CellTag::Question),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CellTag::Minus => "-",
            CellTag::Plus => "+",
            CellTag::Question => "?",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CellTag::Minus => "minus",
            CellTag::Plus => "plus",
            CellTag::Question => "question",
        }
    }
}

/// SegTest over the parameter range t in [0, 1] of the restricted
/// characteristic polynomial: a root anywhere on the closed segment gives
/// question; otherwise minus when F > 0 at both ends, plus otherwise.
pub fn seg_test(f: &RationalUniPoly) -> CellTag {
    if f.is_zero() {
        return CellTag::Question;
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    let chain = SturmChain::new(f).expect("nonzero");
    let f0 = f.eval(&zero);
    let roots = chain.count(&zero, &one).expect("0 < 1") + usize::from(f0.is_zero());
    if roots > 0 {
        return CellTag::Question;
    }
    if f0 > zero && f.eval(&one) > zero {
        CellTag::Minus
    } else {
        CellTag::Plus
    }
}

/// Axis-parallel closed square cell with rational corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCell {
    pub x0: BigRational,
    pub y0: BigRational,
    pub x1: BigRational,
    pub y1: BigRational,
}

impl GridCell {
    pub fn edges(&self) -> [[Vec<BigRational>; 2]; 4] {
        let p = |x: &BigRational, y: &BigRational| vec![x.clone(), y.clone()];
        [
            [p(&self.x0, &self.y0), p(&self.x1, &self.y0)],
            [p(&self.x1, &self.y0), p(&self.x1, &self.y1)],
            [p(&self.x0, &self.y1), p(&self.x1, &self.y1)],
            [p(&self.x0, &self.y0), p(&self.x0, &self.y1)],
        ]
    }
}

fn edge_tags(cell: &GridCell, x: &ExactNetwork, i: usize, beta: &BigRational) -> [CellTag; 4] {
    cell.edges().map(|[a, b]| {
        let f = restrict_characteristic_exact(x, i, &a, &b, beta).expect("cell edges are non-degenerate");
        seg_test(&f)
    })
}

/// SturmCell: minus iff some edge tests minus.
pub fn sturm_cell_from_edges(edges: &[CellTag]) -> CellTag {
    if edges.contains(&CellTag::Minus) {
        CellTag::Minus
    } else {
        CellTag::Plus
    }
}

/// SturmCellB: minus if some edge is minus, else plus if some edge is plus,
/// else question.
pub fn sturm_cell_b_from_edges(edges: &[CellTag]) -> CellTag {
    if edges.contains(&CellTag::Minus) {
        CellTag::Minus
    } else if edges.contains(&CellTag::Plus) {
        CellTag::Plus
    } else {
        CellTag::Question
    }
}

/// TagCell from edge results at the raised and lowered thresholds.
pub fn tag_cell_from_edges(high: &[CellTag], low: &[CellTag]) -> CellTag {
    if sturm_cell_from_edges(high) != CellTag::Minus {
        return CellTag::Plus;
    }
    if sturm_cell_from_edges(low) == CellTag::Minus {
        CellTag::Minus
    } else {
        CellTag::Question
    }
}

pub fn sturm_cell(cell: &GridCell, x: &ExactNetwork, i: usize, beta: &BigRational) -> CellTag {
    sturm_cell_from_edges(&edge_tags(cell, x, i, beta))
}

pub fn sturm_cell_b(cell: &GridCell, x: &ExactNetwork, i: usize, beta: &BigRational) -> CellTag {
    sturm_cell_b_from_edges(&edge_tags(cell, x, i, beta))
}

/// (1 + eps)^alpha beta and (1 - eps)^alpha beta.
pub fn tag_thresholds(x: &ExactNetwork, eps: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let a = 2 * x.half_alpha as usize;
    let hi = num_traits::pow(&one + eps, a) * &x.beta;
    let lo = num_traits::pow(&one - eps, a) * &x.beta;
    (hi, lo)
}

pub fn tag_cell(cell: &GridCell, x: &ExactNetwork, i: usize, eps: &BigRational) -> CellTag {
    let (hi, lo) = tag_thresholds(x, eps);
    let t1 = sturm_cell(cell, x, i, &hi);
    if t1 != CellTag::Minus {
        return CellTag::Plus;
    }
    if sturm_cell(cell, x, i, &lo) == CellTag::Minus {
        CellTag::Minus
    } else {
        CellTag::Question
    }
}

/// SegTest for every unit edge [k, k+1], k0 <= k < k1, of a polynomial in
/// an integer grid parameter. Roots are located by integer bisection on
/// Sturm counts, so the cost is O(#roots log(k1 - k0)) chain evaluations
/// plus one evaluation per root-free run.
pub(crate) fn line_edge_tags(f: &ZPoly, k0: i64, k1: i64) -> Vec<CellTag> {
    let len = (k1 - k0).max(0) as usize;
    if f.is_zero() {
        return vec![CellTag::Question; len];
    }
    let mut marked = vec![false; len];
    let chain = SturmChain::from_zpoly(f.clone());
    if chain.degree() > 0 && len > 0 {
        let sqf = chain.head();
        let at = |k: i64| BigInt::from(k);
        if sqf.sign_at_i64(k0) == 0 {
            marked[0] = true;
        }
        let mut stack = vec![(k0, k1, chain.variations_int(&at(k0)), chain.variations_int(&at(k1)))];
        while let Some((lo, hi, vlo, vhi)) = stack.pop() {
            if vlo == vhi {
                continue;
            }
            if hi - lo == 1 {
                marked[(lo - k0) as usize] = true;
                if hi < k1 && sqf.sign_at_i64(hi) == 0 {
                    marked[(hi - k0) as usize] = true;
                }
                continue;
            }
            let mid = lo + (hi - lo) / 2;
            let vm = chain.variations_int(&at(mid));
            stack.push((lo, mid, vlo, vm));
            stack.push((mid, hi, vm, vhi));
        }
    }
    let mut out = vec![CellTag::Question; len];
    let mut k = 0;
    while k < len {
        if marked[k] {
            k += 1;
            continue;
        }
        let run_end = (k..len).find(|&e| marked[e]).unwrap_or(len);
        // No root on the closed run, so F has one sign there.
        let tag = if f.sign_at_i64(k0 + k as i64) > 0 { CellTag::Minus } else { CellTag::Plus };
        out[k..run_end].fill(tag);
        k = run_end;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::restrict_characteristic;
    use crate::model::Network;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sym() -> Network {
        Network::from_parts(2, &[(vec![0.0, 0.0], 1.0), (vec![2.0, 0.0], 1.0)], 0.0, 1.0, 2.0).unwrap()
    }

    fn seg(net: &Network, a: [f64; 2], b: [f64; 2]) -> CellTag {
        seg_test(&restrict_characteristic(net, 0, &a, &b, None).unwrap())
    }

    #[test]
    fn seg_test_cases() {
        let net = sym();
        assert_eq!(seg(&net, [0.2, 0.0], [0.5, 0.0]), CellTag::Plus);
        assert_eq!(seg(&net, [1.5, 0.0], [1.8, 0.0]), CellTag::Minus);
        assert_eq!(seg(&net, [0.5, 0.0], [1.5, 0.0]), CellTag::Question);
        // A root exactly at the left end still counts.
        assert_eq!(seg(&net, [1.0, 0.0], [1.5, 0.0]), CellTag::Question);
        assert_eq!(seg_test(&RationalUniPoly::zero()), CellTag::Question);
    }

    fn cell(x0: (i64, i64), y0: (i64, i64), side: (i64, i64)) -> GridCell {
        let (x0, y0, s) = (q(x0.0, x0.1), q(y0.0, y0.1), q(side.0, side.1));
        GridCell { x1: &x0 + &s, y1: &y0 + &s, x0, y0 }
    }

    #[test]
    fn cell_procedures() {
        let x = ExactNetwork::new(&sym()).unwrap();
        let beta = x.beta.clone();
        assert_eq!(sturm_cell(&cell((1, 10), (1, 10), (1, 10)), &x, 0, &beta), CellTag::Plus);
        assert_eq!(sturm_cell(&cell((15, 10), (1, 10), (1, 10)), &x, 0, &beta), CellTag::Minus);
        // Straddles x = 1 with the right edge at x = 1.3 entirely outside.
        assert_eq!(sturm_cell(&cell((8, 10), (1, 10), (5, 10)), &x, 0, &beta), CellTag::Minus);
        assert_eq!(sturm_cell_b(&cell((8, 10), (1, 10), (5, 10)), &x, 0, &beta), CellTag::Minus);
        let eps = q(1, 10);
        assert_eq!(tag_cell(&cell((1, 10), (1, 10), (1, 10)), &x, 0, &eps), CellTag::Plus);
        assert_eq!(tag_cell(&cell((3, 1), (3, 1), (1, 10)), &x, 0, &eps), CellTag::Minus);
        assert_eq!(tag_cell(&cell((99, 100), (0, 1), (1, 50)), &x, 0, &eps), CellTag::Question);
    }

    #[test]
    fn edge_combinators() {
        use CellTag::*;
        assert_eq!(sturm_cell_b_from_edges(&[Plus; 4]), Plus);
        assert_eq!(sturm_cell_b_from_edges(&[Question; 4]), Question);
        assert_eq!(sturm_cell_b_from_edges(&[Minus, Plus, Question, Plus]), Minus);
        assert_eq!(sturm_cell_from_edges(&[Question, Plus, Question, Question]), Plus);
    }

    #[test]
    fn batched_matches_literal() {
        let net = Network::from_parts(
            2,
            &[(vec![0.0, 0.0], 1.0), (vec![1.5, 0.25], 2.0), (vec![-0.75, 1.0], 0.5)],
            0.125,
            1.25,
            2.0,
        )
        .unwrap();
        let x = ExactNetwork::new(&net).unwrap();
        let g = q(1, 16);
        for row in [-9i64, -3, 0, 4, 16] {
            let y = &g * BigRational::from_integer(row.into());
            let ox = q(-3, 1);
            let p1 = vec![ox.clone(), y.clone()];
            let parts = x.parts_on_line(0, &p1, &[g.clone(), q(0, 1)]);
            let f = ZPoly::from_rational(&parts.at(&x.beta));
            let batched = line_edge_tags(&f, 0, 96);
            for k in 0..96i64 {
                let xa = &ox + &g * BigRational::from_integer(k.into());
                let xb = &xa + &g;
                let lit = restrict_characteristic_exact(&x, 0, &[xa, y.clone()], &[xb, y.clone()], &x.beta).unwrap();
                assert_eq!(batched[k as usize], seg_test(&lit), "row {row} edge {k}");
            }
        }
    }
}
