//! Convergents `p_j/q_j`, the tail formula and rank intervals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{CfError, Result};
use crate::numeric::{le_q, lt_q};
use crate::word::CFWord;

/// `(p_j, q_j)` for `j = -1, 0, 1, ..., n`, seeded with `p_{-1} = 1, q_{-1} = 0,
/// p_0 = 0, q_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    p: Vec<BigUint>,
    q: Vec<BigUint>,
}

impl Default for ConvergentTable {
    fn default() -> Self {
        ConvergentTable {
            p: vec![BigUint::one(), BigUint::zero()],
            q: vec![BigUint::zero(), BigUint::one()],
        }
    }
}

impl ConvergentTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Depth `n` of the table.
    pub fn depth(&self) -> usize {
        self.p.len() - 2
    }

    /// Number of stored pairs, `n + 2`.
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn slot(&self, j: isize) -> usize {
        assert!(
            j >= -1 && j <= self.depth() as isize,
            "convergent index {j} outside -1..={}",
            self.depth()
        );
        (j + 1) as usize
    }

    pub fn p(&self, j: isize) -> &BigUint {
        &self.p[self.slot(j)]
    }

    pub fn q(&self, j: isize) -> &BigUint {
        &self.q[self.slot(j)]
    }

    /// `p_n` and `q_n` of the deepest entry.
    pub fn last(&self) -> (&BigUint, &BigUint) {
        (self.p.last().unwrap(), self.q.last().unwrap())
    }

    /// `p_{n-1}` and `q_{n-1}` (for depth 0 these are the seeds `1, 0`).
    pub fn previous(&self) -> (&BigUint, &BigUint) {
        let i = self.p.len() - 2;
        (&self.p[i], &self.q[i])
    }

    pub fn push(&mut self, a: &BigUint) {
        let n = self.p.len();
        let p = a * &self.p[n - 1] + &self.p[n - 2];
        let q = a * &self.q[n - 1] + &self.q[n - 2];
        self.p.push(p);
        self.q.push(q);
    }

    /// The convergent `p_j / q_j` for `j >= 0`.
    pub fn convergent(&self, j: usize) -> BigRational {
        let j = j as isize;
        BigRational::new(BigInt::from(self.p(j).clone()), BigInt::from(self.q(j).clone()))
    }

    /// Entries as `(p_j, q_j)` from `j = -1`.
    pub fn entries(&self) -> impl Iterator<Item = (&BigUint, &BigUint)> {
        self.p.iter().zip(self.q.iter())
    }
}

pub fn convergents(word: &CFWord) -> ConvergentTable {
    let mut table = ConvergentTable::new();
    for a in word.digits() {
        table.push(a);
    }
    table
}

fn to_rat(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// `[a_1, ..., a_n, r] = (p_n r + p_{n-1}) / (q_n r + q_{n-1})` for real tail `r >= 1`.
pub fn tail_value(word: &CFWord, r: &BigRational) -> Result<BigRational> {
    if r < &BigRational::one() {
        return Err(CfError::domain(format!("tail {r} < 1")));
    }
    let table = convergents(word);
    let (pn, qn) = table.last();
    let (pm, qm) = table.previous();
    Ok((to_rat(pn) * r + to_rat(pm)) / (to_rat(qn) * r + to_rat(qm)))
}

/// The open interval of irrationals whose expansion starts with a given prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankInterval {
    pub rank: usize,
    pub lo: BigRational,
    pub hi: BigRational,
    pub measure: BigRational,
}

impl RankInterval {
    /// Rank interval for the word a table was built from. Depth 0 gives `(0, 1)`.
    pub fn from_table(table: &ConvergentTable) -> Self {
        let (pn, qn) = table.last();
        let (pm, qm) = table.previous();
        let a = BigRational::new(BigInt::from(pn.clone()), BigInt::from(qn.clone()));
        let b = BigRational::new(
            BigInt::from(pn + pm),
            BigInt::from(qn + qm),
        );
        let measure = BigRational::new(BigInt::one(), BigInt::from(qn * (qn + qm)));
        let (lo, hi) = if lt_q(&a, &b) { (a, b) } else { (b, a) };
        RankInterval {
            rank: table.depth(),
            lo,
            hi,
            measure,
        }
    }

    /// Open-interval membership; endpoints are excluded.
    pub fn contains(&self, x: &BigRational) -> bool {
        lt_q(&self.lo, x) && lt_q(x, &self.hi)
    }

    pub fn contains_interval(&self, other: &RankInterval) -> bool {
        le_q(&self.lo, &other.lo) && le_q(&other.hi, &self.hi)
    }
}

/// `I_n` for the prefix `a_1..a_n`.
pub fn rank_interval(prefix: &CFWord) -> Result<RankInterval> {
    if prefix.is_empty() {
        return Err(CfError::domain("rank interval needs a nonempty prefix"));
    }
    Ok(RankInterval::from_table(&convergents(prefix)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_rational;
    use crate::word::eval_finite;

    fn w(d: &[u64]) -> CFWord {
        CFWord::from_u64s(d).unwrap()
    }

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn pairs(table: &ConvergentTable) -> Vec<(u64, u64)> {
        table
            .entries()
            .map(|(p, q)| (p.try_into().unwrap(), q.try_into().unwrap()))
            .collect()
    }

    #[test]
    fn table_for_2_1_3() {
        let t = convergents(&w(&[2, 1, 3]));
        assert_eq!(pairs(&t), vec![(1, 0), (0, 1), (1, 2), (1, 3), (4, 11)]);
        assert_eq!(t.len(), 5);
        assert_eq!(t.convergent(1), r("1/2"));
        assert_eq!(t.convergent(2), r("1/3"));
        assert_eq!(t.convergent(3), r("4/11"));
        // q_2 p_1 - p_2 q_1 = 3*1 - 1*2 = 1 = (-1)^2
        let det = BigInt::from(t.q(2) * t.p(1)) - BigInt::from(t.p(2) * t.q(1));
        assert_eq!(det, BigInt::one());
    }

    #[test]
    fn all_ones_gives_fibonacci() {
        let t = convergents(&w(&[1, 1, 1, 1, 1]));
        let q: Vec<u64> = (0..=5).map(|j| t.q(j).try_into().unwrap()).collect();
        assert_eq!(q, vec![1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_value(&w(&[2]), &r("2")).unwrap(), r("2/5"));
        assert_eq!(tail_value(&w(&[1]), &r("3/2")).unwrap(), r("3/5"));
        let via_tail = tail_value(&w(&[2, 1, 3]), &r("1")).unwrap();
        assert_eq!(via_tail, eval_finite(&w(&[2, 1, 4])).unwrap());
        assert_eq!(via_tail, r("5/14"));
        assert!(tail_value(&w(&[2]), &r("1/2")).is_err());
    }

    #[test]
    fn rank_interval_examples() {
        let i11 = rank_interval(&w(&[1, 1])).unwrap();
        assert_eq!((i11.lo.clone(), i11.hi.clone()), (r("1/2"), r("2/3")));
        assert_eq!(i11.measure, r("1/6"));

        let i2 = rank_interval(&w(&[2])).unwrap();
        assert_eq!((i2.lo.clone(), i2.hi.clone()), (r("1/3"), r("1/2")));
        assert_eq!(i2.measure, r("1/6"));

        let i1 = rank_interval(&w(&[1])).unwrap();
        assert!(i1.contains_interval(&i11));
        assert!(!i1.contains(&r("1/2")));
        assert!(rank_interval(&CFWord::empty()).is_err());
    }

    #[test]
    fn depth_zero_is_unit_interval() {
        let i0 = RankInterval::from_table(&ConvergentTable::new());
        assert_eq!((i0.lo, i0.hi, i0.measure), (r("0"), r("1"), r("1")));
    }
}
