//! Brute-force GIT over small finite fields: GL_n(F_q), conjugation orbits of
//! tuples, flags, cocharacter limits and closedness.
//!
//! Nothing here reuses the echelon, spin or cocharacter code of the other
//! modules; arithmetic goes through a small independent mod-q layer so the
//! oracle can check them.

mod lattice;
mod small;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::cochar::Flag;
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Matrix, Scalar, Subspace};
use crate::matrep::Representation;

use lattice::{chains, proper_subspaces, span_points, SmallSubspace};
use small::SmallMat;

/// Default cap on |GL_n(F_q)|.
pub const MAX_GROUP_ORDER: u64 = 1 << 21;
/// Cap on `q^n` for subspace and flag enumeration.
pub const MAX_POINTS: u64 = 1 << 14;
/// Environment variable holding the orbit memory cap in MiB.
pub const MEMORY_ENV: &str = "SSRED_MAX_MEMORY_MB";
const DEFAULT_MEMORY_MB: u64 = 1024;

/// Canonical orbit identifier: the least member encoding.
pub type OrbitId = Vec<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_group_order: u64,
    pub max_memory_bytes: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_group_order: MAX_GROUP_ORDER, max_memory_bytes: DEFAULT_MEMORY_MB << 20 }
    }
}

impl OracleLimits {
    /// Defaults, with the memory cap overridden by `SSRED_MAX_MEMORY_MB` if set.
    pub fn from_env() -> Result<Self> {
        let mut limits = OracleLimits::default();
        if let Ok(v) = std::env::var(MEMORY_ENV) {
            let mb: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{MEMORY_ENV} must be a whole number of MiB, got {v:?}")))?;
            limits.max_memory_bytes = mb << 20;
        }
        Ok(limits)
    }

    pub fn with_max_group_order(mut self, order: u64) -> Self {
        self.max_group_order = order;
        self
    }
}

/// ∏_{i<n} (q^n − q^i), saturating.
pub fn gl_order(n: usize, q: u32) -> u64 {
    let qn = (q as u64).saturating_pow(n as u32);
    (0..n).fold(1u64, |acc, i| acc.saturating_mul(qn - (q as u64).pow(i as u32)))
}

/// All of GL_n(F_q) in lexicographic order, with the flags of F_q^n.
#[derive(Clone, Debug)]
pub struct GroupTable {
    n: usize,
    q: u32,
    limits: OracleLimits,
    elements: Vec<Matrix>,
    index: HashMap<u64, usize>,
    small: Vec<SmallMat>,
    inverses: Vec<usize>,
    subspaces: Vec<SmallSubspace>,
    chains: Vec<Vec<usize>>,
}

pub fn enumerate_group(n: usize, q: u32) -> Result<GroupTable> {
    GroupTable::new(n, q, OracleLimits::default())
}

pub fn enumerate_flags(n: usize, q: u32) -> Result<Vec<Flag>> {
    check_field(n, q)?;
    check_points(n, q)?;
    let subs = proper_subspaces(n, q);
    Ok(chains(&subs, q).iter().map(|c| chain_to_flag(n, q, &subs, c)).collect())
}

fn check_field(n: usize, q: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    FieldSpec::prime(q as u64).map(|_| ())
}

fn check_points(n: usize, q: u32) -> Result<()> {
    let points = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if points > MAX_POINTS {
        return Err(Error::ResourceBoundExceeded(format!("q^n = {points} exceeds {MAX_POINTS}")));
    }
    Ok(())
}

fn chain_to_flag(n: usize, q: u32, subs: &[SmallSubspace], chain: &[usize]) -> Flag {
    let f = FieldSpec::Prime(q);
    let mut steps: Vec<Subspace> = chain
        .iter()
        .map(|&i| {
            let vecs: Vec<Vec<Scalar>> =
                subs[i].basis.iter().map(|b| b.iter().map(|&x| f.from_i64(x as i64)).collect()).collect();
            Subspace::span(f, n, &vecs)
        })
        .collect();
    steps.push(Subspace::full(f, n));
    Flag::new(steps).expect("enumerated chains are strictly increasing")
}

/// Record of one conjugation orbit of tuples.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub representative: Vec<Matrix>,
    pub members: HashSet<Vec<u64>>,
    /// Orbits reached by one cocharacter limit, including the trivial one.
    pub accessible_from: BTreeSet<OrbitId>,
    pub is_cochar_closed: bool,
}

impl OrbitRecord {
    pub fn id(&self) -> OrbitId {
        self.members.iter().min().cloned().expect("orbits are nonempty")
    }
}

/// Outcome of comparing limits along individual cocharacters with limits
/// along their flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagLemmaReport {
    pub cocharacters: usize,
    pub tuples: usize,
    pub comparisons: usize,
}

impl GroupTable {
    pub fn new(n: usize, q: u32, limits: OracleLimits) -> Result<Self> {
        check_field(n, q)?;
        let order = gl_order(n, q);
        if order > limits.max_group_order {
            return Err(Error::ResourceBoundExceeded(format!(
                "|GL_{n}(F_{q})| = {order} exceeds the cap {}",
                limits.max_group_order
            )));
        }
        check_points(n, q)?;
        let total = (q as u64).pow((n * n) as u32);
        let mut small = Vec::with_capacity(order as usize);
        for code in 0..total {
            let m = SmallMat::decode(code, n, q);
            if m.inverse(q).is_some() {
                small.push(m);
            }
        }
        if small.len() as u64 != order {
            return Err(Error::InternalInvariantViolation(format!(
                "enumerated {} invertible matrices, expected {order}",
                small.len()
            )));
        }
        let index: HashMap<u64, usize> = small.iter().enumerate().map(|(i, m)| (m.code(q), i)).collect();
        let inverses =
            small.iter().map(|m| index[&m.inverse(q).expect("enumerated as invertible").code(q)]).collect();
        let elements = small.iter().map(|m| m.to_matrix(q)).collect();
        let subspaces = proper_subspaces(n, q);
        let chains = chains(&subspaces, q);
        Ok(GroupTable { n, q, limits, elements, index, small, inverses, subspaces, chains })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec::Prime(self.q)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn position(&self, m: &Matrix) -> Option<usize> {
        let s = self.to_small(m).ok()?;
        self.index.get(&s.code(self.q)).copied()
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// All flags of F_q^n, the trivial one first.
    pub fn flags(&self) -> Vec<Flag> {
        self.chains.iter().map(|c| chain_to_flag(self.n, self.q, &self.subspaces, c)).collect()
    }

    fn to_small(&self, m: &Matrix) -> Result<SmallMat> {
        if m.field() != self.field() || m.rows() != self.n || m.cols() != self.n {
            return Err(Error::InvalidInput(format!("matrix is not in GL_{}(F_{})", self.n, self.q)));
        }
        SmallMat::from_matrix(m).ok_or_else(|| Error::InvalidInput("matrix entries are not residues".into()))
    }

    fn tuple_to_small(&self, tuple: &[Matrix]) -> Result<Vec<SmallMat>> {
        tuple.iter().map(|m| self.to_small(m)).collect()
    }

    fn encode(&self, tuple: &[SmallMat]) -> Vec<u64> {
        tuple.iter().map(|m| m.code(self.q)).collect()
    }

    fn check_memory(&self, tuple_len: usize) -> Result<()> {
        let bytes = (self.order() as u64)
            .saturating_mul(tuple_len.max(1) as u64)
            .saturating_mul((self.n * self.n) as u64);
        if bytes > self.limits.max_memory_bytes {
            return Err(Error::ResourceBoundExceeded(format!(
                "orbit storage needs {bytes} bytes, cap is {}",
                self.limits.max_memory_bytes
            )));
        }
        Ok(())
    }

    fn orbit_small(&self, tuple: &[SmallMat]) -> Result<HashSet<Vec<u64>>> {
        self.check_memory(tuple.len())?;
        let q = self.q;
        let mut set = HashSet::new();
        for (i, g) in self.small.iter().enumerate() {
            let g_inv = &self.small[self.inverses[i]];
            let code: Vec<u64> = tuple.iter().map(|m| g.mul(m, q).mul(g_inv, q).code(q)).collect();
            set.insert(code);
        }
        Ok(set)
    }

    /// `{g·t·g⁻¹ : g ∈ GL_n(F_q)}` as encodings.
    pub fn orbit(&self, tuple: &[Matrix]) -> Result<HashSet<Vec<u64>>> {
        self.orbit_small(&self.tuple_to_small(tuple)?)
    }

    pub fn orbit_id(&self, tuple: &[Matrix]) -> Result<OrbitId> {
        Ok(self.orbit(tuple)?.into_iter().min().expect("orbits are nonempty"))
    }

    pub fn same_orbit(&self, a: &[Matrix], b: &[Matrix]) -> Result<bool> {
        if a.len() != b.len() {
            return Ok(false);
        }
        let target = self.encode(&self.tuple_to_small(b)?);
        Ok(self.orbit(a)?.contains(&target))
    }

    fn chain_preserved(&self, chain: &[usize], tuple: &[SmallMat]) -> bool {
        chain.iter().all(|&s| tuple.iter().all(|m| self.subspaces[s].is_preserved_by(m, self.q)))
    }

    /// Columns of an adapted basis of the chain, and the block of each column.
    fn adapted_basis(&self, chain: &[usize]) -> (SmallMat, Vec<usize>) {
        let n = self.n;
        let q = self.q;
        let mut cols: Vec<Vec<u32>> = Vec::new();
        let mut blocks = Vec::new();
        let mut span = span_points(n, q, &[]);
        let identity: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        for (b, step) in chain.iter().map(|&s| &self.subspaces[s].basis).chain(std::iter::once(&identity)).enumerate() {
            for v in step {
                if !span[small::vec_code(v, q)] {
                    cols.push(v.clone());
                    blocks.push(b);
                    span = span_points(n, q, &cols);
                }
            }
        }
        (SmallMat::from_columns(n, &cols), blocks)
    }

    /// Limit of the tuple along the cocharacter with strictly decreasing
    /// weights on the chain's adapted basis; `None` if some entry does not
    /// preserve the chain.
    fn chain_limit(&self, chain: &[usize], tuple: &[SmallMat]) -> Option<Vec<SmallMat>> {
        let q = self.q;
        let n = self.n;
        let (b, blocks) = self.adapted_basis(chain);
        let b_inv = b.inverse(q).expect("adapted basis is invertible");
        let mut out = Vec::with_capacity(tuple.len());
        for m in tuple {
            let mut a = b_inv.mul(m, q).mul(&b, q);
            for i in 0..n {
                for j in 0..n {
                    if blocks[i] > blocks[j] && a.e[i * n + j] != 0 {
                        return None;
                    }
                    if blocks[i] != blocks[j] {
                        a.e[i * n + j] = 0;
                    }
                }
            }
            out.push(b.mul(&a, q).mul(&b_inv, q));
        }
        Some(out)
    }

    fn closed_small(&self, tuple: &[SmallMat]) -> Result<bool> {
        let orbit = self.orbit_small(tuple)?;
        for chain in self.chains.iter().skip(1) {
            if !self.chain_preserved(chain, tuple) {
                continue;
            }
            let limit = self.chain_limit(chain, tuple).expect("preserved chain has a limit");
            if !orbit.contains(&self.encode(&limit)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn one_step_limits(&self, tuple: &[SmallMat]) -> Vec<Vec<SmallMat>> {
        self.chains.iter().filter_map(|chain| self.chain_limit(chain, tuple)).collect()
    }

    /// Flags preserved by every entry, the trivial flag first.
    pub fn preserved_flags(&self, tuple: &[Matrix]) -> Result<Vec<Flag>> {
        let t = self.tuple_to_small(tuple)?;
        Ok(self
            .chains
            .iter()
            .filter(|c| self.chain_preserved(c, &t))
            .map(|c| chain_to_flag(self.n, self.q, &self.subspaces, c))
            .collect())
    }

    /// Proper nonzero subspaces preserved by every entry.
    pub fn invariant_subspaces(&self, tuple: &[Matrix]) -> Result<Vec<Subspace>> {
        let t = self.tuple_to_small(tuple)?;
        Ok(self
            .chains
            .iter()
            .filter(|c| c.len() == 1 && self.chain_preserved(c, &t))
            .map(|c| chain_to_flag(self.n, self.q, &self.subspaces, c).steps()[0].clone())
            .collect())
    }

    /// The subgroup generated by `gens`, as sorted element positions.
    pub fn generated_subgroup(&self, gens: &[Matrix]) -> Result<Vec<usize>> {
        let g = self.tuple_to_small(gens)?;
        let q = self.q;
        let id = self.index[&SmallMat::identity(self.n).code(q)];
        let mut seen = vec![false; self.order()];
        seen[id] = true;
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for h in &g {
                let y = self.index[&self.small[x].mul(h, q).code(q)];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok((0..self.order()).filter(|&i| seen[i]).collect())
    }

    /// Elements `x` with `x·⟨gens⟩·x⁻¹ = ⟨gens⟩`.
    pub fn normalizer(&self, gens: &[Matrix]) -> Result<Vec<Matrix>> {
        let g = self.tuple_to_small(gens)?;
        let sub: HashSet<usize> = self.generated_subgroup(gens)?.into_iter().collect();
        let q = self.q;
        Ok((0..self.order())
            .filter(|&x| {
                let xi = &self.small[self.inverses[x]];
                g.iter().all(|h| sub.contains(&self.index[&self.small[x].mul(h, q).mul(xi, q).code(q)]))
            })
            .map(|x| self.elements[x].clone())
            .collect())
    }

    /// Elements commuting with every generator.
    pub fn centralizer(&self, gens: &[Matrix]) -> Result<Vec<Matrix>> {
        let g = self.tuple_to_small(gens)?;
        let q = self.q;
        Ok((0..self.order())
            .filter(|&x| g.iter().all(|h| self.small[x].mul(h, q) == h.mul(&self.small[x], q)))
            .map(|x| self.elements[x].clone())
            .collect())
    }

    /// Every limit of `tuple` along a k-cocharacter lies in its orbit.
    pub fn is_cochar_closed(&self, tuple: &[Matrix]) -> Result<bool> {
        self.closed_small(&self.tuple_to_small(tuple)?)
    }

    /// Cocharacter-closed orbits reachable from `tuple` by one limit.
    pub fn accessible_closed_orbits(&self, tuple: &[Matrix]) -> Result<BTreeSet<OrbitId>> {
        let t = self.tuple_to_small(tuple)?;
        let mut seen: HashMap<Vec<u64>, Option<OrbitId>> = HashMap::new();
        let mut out = BTreeSet::new();
        for limit in self.one_step_limits(&t) {
            let code = self.encode(&limit);
            if seen.contains_key(&code) {
                continue;
            }
            let closed = if self.closed_small(&limit)? {
                Some(self.orbit_small(&limit)?.into_iter().min().expect("orbits are nonempty"))
            } else {
                None
            };
            if let Some(id) = &closed {
                out.insert(id.clone());
            }
            seen.insert(code, closed);
        }
        Ok(out)
    }

    pub fn orbit_record(&self, tuple: &[Matrix]) -> Result<OrbitRecord> {
        let t = self.tuple_to_small(tuple)?;
        let members = self.orbit_small(&t)?;
        let mut accessible_from = BTreeSet::new();
        for limit in self.one_step_limits(&t) {
            accessible_from.insert(self.orbit_small(&limit)?.into_iter().min().expect("orbits are nonempty"));
        }
        let is_cochar_closed = self.closed_small(&t)?;
        Ok(OrbitRecord { representative: tuple.to_vec(), members, accessible_from, is_cochar_closed })
    }

    /// Closedness of the orbit of the generic tuple (generators and inverses).
    pub fn oracle_gcr(&self, rep: &Representation) -> Result<bool> {
        if rep.field() != self.field() || rep.n() != self.n {
            return Err(Error::InvalidInput(format!("representation is not over GL_{}(F_{})", self.n, self.q)));
        }
        let mut tuple = rep.generators().to_vec();
        tuple.extend(rep.inverses());
        self.is_cochar_closed(&tuple)
    }

    /// Checks that flags capture every k-cocharacter: for every `g·diag(a^w)·g⁻¹`
    /// with `|w_i| ≤ max_height`, and every tuple of one or two group elements,
    /// the direct limit exists exactly when the eigen-flag is preserved, and
    /// then agrees with the flag limit up to conjugacy.
    pub fn verify_flag_suffices(&self, max_height: i64) -> Result<FlagLemmaReport> {
        let n = self.n;
        let q = self.q;
        let weights = weight_vectors(n, max_height);
        let mut tuples: Vec<Vec<SmallMat>> = self.small.iter().map(|m| vec![m.clone()]).collect();
        if self.order() * self.order() <= 4096 {
            for a in &self.small {
                for b in &self.small {
                    tuples.push(vec![a.clone(), b.clone()]);
                }
            }
        }
        let mut comparisons = 0;
        for (gi, g) in self.small.iter().enumerate() {
            let g_inv = &self.small[self.inverses[gi]];
            for w in &weights {
                let chain = self.eigen_chain(g, w);
                for t in &tuples {
                    let direct: Option<Vec<SmallMat>> = t
                        .iter()
                        .map(|m| {
                            let mut a = g_inv.mul(m, q).mul(g, q);
                            for i in 0..n {
                                for j in 0..n {
                                    if w[i] < w[j] && a.e[i * n + j] != 0 {
                                        return None;
                                    }
                                    if w[i] != w[j] {
                                        a.e[i * n + j] = 0;
                                    }
                                }
                            }
                            Some(g.mul(&a, q).mul(g_inv, q))
                        })
                        .collect();
                    let via_flag = self.chain_limit(&chain, t);
                    let agree = match (&direct, &via_flag) {
                        (None, None) => true,
                        (Some(d), Some(f)) => self.orbit_small(d)?.contains(&self.encode(f)),
                        _ => false,
                    };
                    if !agree {
                        return Err(Error::InternalInvariantViolation(format!(
                            "cocharacter limit and flag limit disagree for weights {w:?}"
                        )));
                    }
                    comparisons += 1;
                }
            }
        }
        Ok(FlagLemmaReport {
            cocharacters: self.order() * weights.len(),
            tuples: tuples.len(),
            comparisons,
        })
    }

    /// The chain `V_c = span{g·e_i : w_i ≥ c}` over the distinct weights.
    fn eigen_chain(&self, g: &SmallMat, w: &[i64]) -> Vec<usize> {
        let n = self.n;
        let q = self.q;
        let mut levels: Vec<i64> = w.to_vec();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        levels.dedup();
        let mut chain = Vec::new();
        for &c in &levels {
            let basis: Vec<Vec<u32>> = (0..n).filter(|&i| w[i] >= c).map(|i| (0..n).map(|r| g.at(r, i)).collect()).collect();
            if basis.len() == n {
                break;
            }
            let members = span_points(n, q, &basis);
            let idx = self
                .subspaces
                .iter()
                .position(|s| s.members == members)
                .expect("every proper subspace is enumerated");
            chain.push(idx);
        }
        chain
    }
}

fn weight_vectors(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-h..=h).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn is_cochar_closed(tuple: &[Matrix], table: &GroupTable) -> Result<bool> {
    table.is_cochar_closed(tuple)
}

pub fn accessible_closed_orbits(tuple: &[Matrix], table: &GroupTable) -> Result<BTreeSet<OrbitId>> {
    table.accessible_closed_orbits(tuple)
}

/// Builds the table for the representation's GL_n(F_q) and decides closedness
/// of its generic tuple.
pub fn oracle_gcr(rep: &Representation, limits: OracleLimits) -> Result<bool> {
    let q = match rep.field() {
        FieldSpec::Prime(p) => p,
        FieldSpec::Rational => return Err(Error::InvalidInput("the oracle needs a finite field".into())),
    };
    GroupTable::new(rep.n(), q, limits)?.oracle_gcr(rep)
}
