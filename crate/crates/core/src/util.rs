/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    /// Dense component labels, numbered by first occurrence.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            labels[x] = root_label[r];
        }
        (labels, count)
    }
}

/// All order-preserving maps `[k] -> [n]`, as image lists of length `k + 1`,
/// in lexicographic order.
pub(crate) fn monotone_maps(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k + 1);
    fn rec(k: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(k, n, v, cur, out);
            cur.pop();
        }
    }
    rec(k, n, 0, &mut cur, &mut out);
    out
}
