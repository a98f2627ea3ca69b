//! Subspaces of F_q^n by echelon form, and the chains they build.

use super::small::{mulm, vec_code, SmallMat};

#[derive(Clone, Debug)]
pub(crate) struct SmallSubspace {
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
    /// Indicator of the points, indexed by `vec_code`.
    pub members: Vec<bool>,
}

impl SmallSubspace {
    pub fn contains(&self, v: &[u32], q: u32) -> bool {
        self.members[vec_code(v, q)]
    }

    pub fn is_preserved_by(&self, m: &SmallMat, q: u32) -> bool {
        self.basis.iter().all(|b| self.contains(&m.apply(b, q), q))
    }
}

/// All points of the span of `basis`.
pub(crate) fn span_points(n: usize, q: u32, basis: &[Vec<u32>]) -> Vec<bool> {
    let size = (q as usize).pow(n as u32);
    let mut members = vec![false; size];
    let mut points: Vec<Vec<u32>> = vec![vec![0; n]];
    for b in basis {
        let mut next = Vec::with_capacity(points.len() * q as usize);
        for p in &points {
            for c in 0..q {
                next.push((0..n).map(|i| (p[i] + mulm(c, b[i], q)) % q).collect());
            }
        }
        points = next;
    }
    for p in points {
        members[vec_code(&p, q)] = true;
    }
    members
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every proper nonzero subspace, one per reduced echelon form.
pub(crate) fn proper_subspaces(n: usize, q: u32) -> Vec<SmallSubspace> {
    let mut out = Vec::new();
    for k in 1..n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = (q as u64).pow(free.len() as u32);
            for code in 0..total {
                let mut basis: Vec<Vec<u32>> = (0..k)
                    .map(|r| {
                        let mut row = vec![0; n];
                        row[pivots[r]] = 1;
                        row
                    })
                    .collect();
                let mut c = code;
                for &(r, col) in &free {
                    basis[r][col] = (c % q as u64) as u32;
                    c /= q as u64;
                }
                let members = span_points(n, q, &basis);
                out.push(SmallSubspace { dim: k, basis, members });
            }
        }
    }
    out
}

/// All strictly increasing chains of proper subspaces, starting with the
/// empty chain (the trivial flag).
pub(crate) fn chains(subs: &[SmallSubspace], q: u32) -> Vec<Vec<usize>> {
    let m = subs.len();
    let inside: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| subs[i].dim < subs[j].dim && subs[i].basis.iter().all(|b| subs[j].contains(b, q))).collect())
        .collect();
    let mut out = vec![Vec::new()];
    let mut stack: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
    stack.reverse();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty chain");
        for j in (0..m).rev() {
            if inside[last][j] {
                let mut next = chain.clone();
                next.push(j);
                stack.push(next);
            }
        }
        out.push(chain);
    }
    out
}
