use fixedbitset::FixedBitSet;

/// A binary relation over the states `0..n` of one transition system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairRelation {
    n: usize,
    bits: FixedBitSet,
}

impl PairRelation {
    pub fn empty(n: usize) -> PairRelation {
        PairRelation {
            n,
            bits: FixedBitSet::with_capacity(n * n),
        }
    }

    pub fn full(n: usize) -> PairRelation {
        let mut r = PairRelation::empty(n);
        r.bits.insert_range(..);
        r
    }

    pub fn identity(n: usize) -> PairRelation {
        let mut r = PairRelation::empty(n);
        for s in 0..n {
            r.insert(s, s);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> PairRelation {
        let mut r = PairRelation::empty(n);
        for (s, t) in pairs {
            r.insert(s, t);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.bits.contains(s * self.n + t)
    }

    pub fn insert(&mut self, s: usize, t: usize) {
        self.bits.insert(s * self.n + t);
    }

    pub fn remove(&mut self, s: usize, t: usize) {
        self.bits.set(s * self.n + t, false);
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits.ones().map(move |i| (i / self.n, i % self.n))
    }

    /// States related to `s` on the right.
    pub fn row(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&t| self.contains(s, t))
    }

    pub fn intersect(&self, other: &PairRelation) -> PairRelation {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PairRelation { n: self.n, bits }
    }

    pub fn inverse(&self) -> PairRelation {
        PairRelation::from_pairs(self.n, self.pairs().map(|(s, t)| (t, s)))
    }

    /// `R ∩ R⁻¹`
    pub fn symmetric_core(&self) -> PairRelation {
        self.intersect(&self.inverse())
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(s, t)| self.contains(t, s))
    }

    pub fn is_subset(&self, other: &PairRelation) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

/// A partition of the states `0..n` into classes numbered densely from 0 in
/// order of their least member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    pub class_of: Vec<usize>,
}

impl Partition {
    /// Classes of an equivalence relation. Returns `None` when `r` is not an
    /// equivalence.
    pub fn from_relation(r: &PairRelation) -> Option<Partition> {
        let n = r.size();
        let mut class_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for s in 0..n {
            if !r.contains(s, s) {
                return None;
            }
            match reps.iter().position(|&rep| r.contains(s, rep)) {
                Some(c) => class_of[s] = c,
                None => {
                    class_of[s] = reps.len();
                    reps.push(s);
                }
            }
        }
        let p = Partition { class_of };
        (p.to_relation() == *r).then_some(p)
    }

    /// Renumbers arbitrary class labels densely by least member.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut map = std::collections::HashMap::new();
        let class_of = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition { class_of }
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn same(&self, s: usize, t: usize) -> bool {
        self.class_of[s] == self.class_of[t]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (s, &c) in self.class_of.iter().enumerate() {
            out[c].push(s);
        }
        out
    }

    pub fn to_relation(&self) -> PairRelation {
        let n = self.class_of.len();
        let mut r = PairRelation::empty(n);
        for s in 0..n {
            for t in 0..n {
                if self.same(s, t) {
                    r.insert(s, t);
                }
            }
        }
        r
    }
}
