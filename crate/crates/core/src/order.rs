//! Finite partial orders stored as dense closure matrices.
//!
//! Joins and meets are partial: they are computed on demand by scanning the
//! common upper (lower) bound set for a least (greatest) element and return
//! `None` when no such element exists.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("antisymmetry violated by cycle {}", .cycle.join(" < "))]
    AntisymmetryViolation { cycle: Vec<String> },
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("matrix has {got} entries, expected {expected}")]
    BadMatrix { expected: usize, got: usize },
    #[error("size mismatch: {0} vs {1} elements")]
    SizeMismatch(usize, usize),
}

/// A finite poset over named elements. Element `i` is `names()[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    // leq[x * n + y] is true iff x <= y
    leq: Vec<bool>,
}

/// Which bound is missing for a pair that has no join or meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MissingBound {
    Join,
    Meet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeWitness {
    pub x: usize,
    pub y: usize,
    pub missing: MissingBound,
}

fn check_unique(names: &[String]) -> Result<HashMap<&str, usize>, OrderError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(OrderError::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

/// Builds a poset from declared elements and cover (or comparability) pairs
/// `(a, b)` meaning `a <= b`. The order is the reflexive-transitive closure of
/// the pairs; a cycle through distinct elements is rejected.
pub fn validate_poset<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<FinitePoset, OrderError> {
    let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
    let index = check_unique(&names)?;
    let lookup = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| OrderError::UnknownElement(s.to_owned()))
    };
    let edges = pairs
        .iter()
        .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
        .collect::<Result<Vec<_>, OrderError>>()?;

    let n = names.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(a, b) in &edges {
        leq[a * n + b] = true;
    }
    transitive_closure(&mut leq, n);

    for x in 0..n {
        for y in x + 1..n {
            if leq[x * n + y] && leq[y * n + x] {
                let mut cycle = path(&edges, n, x, y);
                let back = path(&edges, n, y, x);
                cycle.extend_from_slice(&back[1..back.len() - 1]);
                return Err(OrderError::AntisymmetryViolation {
                    cycle: cycle.into_iter().map(|i| names[i].clone()).collect(),
                });
            }
        }
    }
    Ok(FinitePoset { names, leq })
}

/// Repeated squaring: R := R ∪ R∘R until nothing changes.
fn transitive_closure(leq: &mut [bool], n: usize) {
    loop {
        let mut next = leq.to_vec();
        for x in 0..n {
            for y in 0..n {
                if leq[x * n + y] {
                    for z in 0..n {
                        if leq[y * n + z] {
                            next[x * n + z] = true;
                        }
                    }
                }
            }
        }
        if next == leq {
            return;
        }
        leq.copy_from_slice(&next);
    }
}

// Shortest path from `from` to `to` along the raw input edges.
fn path(edges: &[(usize, usize)], n: usize, from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(a, b) in edges {
            if a == u && prev[b] == usize::MAX {
                prev[b] = u;
                queue.push_back(b);
            }
        }
    }
    let mut out = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        out.push(cur);
    }
    out.reverse();
    out
}

impl FinitePoset {
    /// Wraps an already-closed order matrix, checking all poset axioms.
    pub fn from_matrix(names: Vec<String>, leq: Vec<bool>) -> Result<Self, OrderError> {
        let n = names.len();
        if leq.len() != n * n {
            return Err(OrderError::BadMatrix {
                expected: n * n,
                got: leq.len(),
            });
        }
        check_unique(&names)?;
        for x in 0..n {
            if !leq[x * n + x] {
                return Err(OrderError::NotReflexive(names[x].clone()));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(OrderError::AntisymmetryViolation {
                        cycle: vec![names[x].clone(), names[y].clone()],
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !leq[x * n + y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y * n + z] && !leq[x * n + z] {
                        return Err(OrderError::NotTransitive(
                            names[x].clone(),
                            names[y].clone(),
                            names[z].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn matrix(&self) -> &[bool] {
        &self.leq
    }

    /// Least element of the common upper bound set, if there is one.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&u| self.leq(x, u) && self.leq(y, u))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&u| upper.iter().all(|&v| self.leq(u, v)))
    }

    /// Greatest element of the common lower bound set, if there is one.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&l| self.leq(l, x) && self.leq(l, y))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&l| lower.iter().all(|&v| self.leq(v, l)))
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(x, y)))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(y, x)))
    }

    /// `(least, greatest)`, each absent when the poset has no such element.
    pub fn bounds(&self) -> (Option<usize>, Option<usize>) {
        (self.least(), self.greatest())
    }

    /// Checks that every pair has a join and a meet. The witness is the first
    /// pair `(x, y)` with `x <= y` in index order that lacks one.
    pub fn is_lattice(&self) -> Verdict<LatticeWitness> {
        for x in 0..self.len() {
            for y in x..self.len() {
                if self.join(x, y).is_none() {
                    return Verdict::Fails(LatticeWitness {
                        x,
                        y,
                        missing: MissingBound::Join,
                    });
                }
                if self.meet(x, y).is_none() {
                    return Verdict::Fails(LatticeWitness {
                        x,
                        y,
                        missing: MissingBound::Meet,
                    });
                }
            }
        }
        Verdict::Holds
    }

    /// Hasse diagram edges `(a, b)` with `a` covered by `b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The suborder induced on `subset` (host indices, in the given order).
    pub fn induced(&self, subset: &[usize]) -> FinitePoset {
        let names = subset.iter().map(|&i| self.names[i].clone()).collect();
        let mut leq = Vec::with_capacity(subset.len() * subset.len());
        for &x in subset {
            for &y in subset {
                leq.push(self.leq(x, y));
            }
        }
        FinitePoset { names, leq }
    }

    // (strictly-below count, strictly-above count, height from a minimal element)
    fn signatures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut height = vec![0usize; n];
        // Elements sorted by down-set size form a linear extension.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq(y, x)).count());
        for &x in &order {
            height[x] = (0..n)
                .filter(|&y| self.lt(y, x))
                .map(|y| height[y] + 1)
                .max()
                .unwrap_or(0);
        }
        (0..n)
            .map(|x| {
                let below = (0..n).filter(|&y| self.lt(y, x)).count();
                let above = (0..n).filter(|&y| self.lt(x, y)).count();
                (below, above, height[x])
            })
            .collect()
    }
}

/// Checks a proposed map (or searches for one) making `p` and `q` order
/// isomorphic. `map[x]` is the image of `p`'s element `x` in `q`.
pub fn find_order_isomorphism(
    p: &FinitePoset,
    q: &FinitePoset,
    candidate: Option<&[usize]>,
) -> Result<Option<Vec<usize>>, OrderError> {
    if p.len() != q.len() {
        return Err(OrderError::SizeMismatch(p.len(), q.len()));
    }
    let n = p.len();
    if let Some(map) = candidate {
        return Ok(is_order_isomorphism(p, q, map).then(|| map.to_vec()));
    }

    let sig_p = p.signatures();
    let sig_q = q.signatures();
    let mut sorted_p = sig_p.clone();
    let mut sorted_q = sig_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return Ok(None);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(p, q, &sig_p, &sig_q, 0, &mut map, &mut used).then_some(map))
}

fn extend(
    p: &FinitePoset,
    q: &FinitePoset,
    sig_p: &[(usize, usize, usize)],
    sig_q: &[(usize, usize, usize)],
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if x == p.len() {
        return true;
    }
    for y in 0..q.len() {
        if used[y] || sig_p[x] != sig_q[y] {
            continue;
        }
        let consistent = (0..x).all(|w| p.leq(w, x) == q.leq(map[w], y) && p.leq(x, w) == q.leq(y, map[w]));
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(p, q, sig_p, sig_q, x + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}

/// True iff `map` is a bijection with `x <= y` exactly when `map[x] <= map[y]`.
pub fn is_order_isomorphism(p: &FinitePoset, q: &FinitePoset, map: &[usize]) -> bool {
    let n = p.len();
    if map.len() != n || q.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == q.leq(map[x], map[y])))
}
