//! Trace codes `C_D = {(Tr(x d))_{d in D} : x in GF(q)}` and their parameters.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::Matrix;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};

/// Where a defining set came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetKind {
    /// `{x != 0 : Tr(x^2) = 0}`
    Full,
    /// One representative per GF(p)*-orbit of a full set.
    Punctured,
    /// `{x != 0 : Tr(f(x)) = 0}` for a named function f.
    Planar(String),
    /// Orbit representatives of a planar set.
    PuncturedPlanar(String),
    Custom,
}

impl SetKind {
    pub fn label(&self) -> String {
        match self {
            SetKind::Full => "full".into(),
            SetKind::Punctured => "punctured".into(),
            SetKind::Planar(name) => format!("planar:{name}"),
            SetKind::PuncturedPlanar(name) => format!("planar-punctured:{name}"),
            SetKind::Custom => "custom".into(),
        }
    }

    fn punctured(&self) -> SetKind {
        match self {
            SetKind::Planar(name) => SetKind::PuncturedPlanar(name.clone()),
            SetKind::Full => SetKind::Punctured,
            other => other.clone(),
        }
    }

    pub fn is_punctured(&self) -> bool {
        matches!(self, SetKind::Punctured | SetKind::PuncturedPlanar(_))
    }
}

impl Serialize for SetKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Distinct nonzero field elements in ascending encoding order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    elements: Vec<FieldElement>,
    encodings: Vec<u64>,
    kind: SetKind,
}

impl DefiningSet {
    /// All `x != 0` satisfying `keep`, in canonical order.
    pub fn from_predicate(
        ctx: &FieldCtx,
        kind: SetKind,
        mut keep: impl FnMut(&FieldElement) -> bool,
    ) -> Result<Self> {
        let mut elements = Vec::new();
        let mut encodings = Vec::new();
        for (enc, x) in ctx.elements().enumerate().skip(1) {
            if keep(&x) {
                elements.push(x);
                encodings.push(enc as u64);
            }
        }
        if elements.is_empty() {
            return Err(Error::EmptyDefiningSet);
        }
        Ok(DefiningSet {
            elements,
            encodings,
            kind,
        })
    }

    /// Arbitrary nonzero elements; sorted and checked for duplicates.
    pub fn custom(ctx: &FieldCtx, elements: Vec<FieldElement>) -> Result<Self> {
        let mut pairs = Vec::with_capacity(elements.len());
        for x in elements {
            ctx.check(&[&x])?;
            if x.is_zero() {
                return Err(Error::Invalid("defining set contains zero".into()));
            }
            pairs.push((ctx.encode(&x), x));
        }
        pairs.sort_by_key(|(e, _)| *e);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid("defining set contains duplicates".into()));
        }
        if pairs.is_empty() {
            return Err(Error::EmptyDefiningSet);
        }
        let (encodings, elements) = pairs.into_iter().unzip();
        Ok(DefiningSet {
            elements,
            encodings,
            kind: SetKind::Custom,
        })
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn encodings(&self) -> &[u64] {
        &self.encodings
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `D = {x in GF(q)* : Tr(x^2) = 0}`.
pub fn build_defining_set(ctx: &FieldCtx) -> Result<DefiningSet> {
    DefiningSet::from_predicate(ctx, SetKind::Full, |x| {
        ctx.trace_linear(&ctx.square(x)) == 0
    })
}

/// Keeps the smallest-encoding member of every GF(p)*-orbit of `set`.
pub fn puncture_representatives(ctx: &FieldCtx, set: &DefiningSet) -> Result<DefiningSet> {
    let p = ctx.p();
    let members: std::collections::HashSet<u64> = set.encodings.iter().copied().collect();
    let mut elements = Vec::new();
    let mut encodings = Vec::new();
    for (x, &enc) in set.elements.iter().zip(&set.encodings) {
        let mut smallest = true;
        for a in 2..p {
            let e = ctx.encode(&ctx.scale(a, x));
            if !members.contains(&e) {
                return Err(Error::NotScalingClosed);
            }
            if e < enc {
                smallest = false;
            }
        }
        if smallest {
            elements.push(x.clone());
            encodings.push(enc);
        }
    }
    debug_assert_eq!(elements.len() * (p as usize - 1), set.len());
    Ok(DefiningSet {
        elements,
        encodings,
        kind: set.kind.punctured(),
    })
}

/// Multiplicity of each Hamming weight, weight 0 included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: usize,
    pub k: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .filter(|(&w, _)| w > 0)
            .map(|(&w, &a)| (w, a))
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.nonzero().map(|(w, _)| w).next()
    }

    pub fn max_nonzero_weight(&self) -> Option<usize> {
        self.nonzero().map(|(w, _)| w).last()
    }

    /// Number of distinct nonzero weights.
    pub fn num_weights(&self) -> usize {
        self.nonzero().count()
    }

    pub fn get(&self, w: usize) -> u64 {
        self.counts.get(&w).copied().unwrap_or(0)
    }
}

#[derive(Serialize)]
struct WeightRow {
    w: usize,
    #[serde(rename = "A")]
    a: u64,
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<WeightRow> = self
            .counts
            .iter()
            .map(|(&w, &a)| WeightRow { w, a })
            .collect();
        rows.serialize(s)
    }
}

/// Result of the dual minimum distance computation. When `exact` is false the
/// search budget ran out and `value` is only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualDistance {
    pub value: usize,
    pub exact: bool,
    pub method: DualMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualMethod {
    Enumeration,
    DependencySearch,
}

/// Exhaustive dual enumeration is used at or below this redundancy.
pub const DUAL_ENUMERATION_MAX_REDUNDANCY: usize = 20;
/// Work budget (candidate column combinations) for the dependency search.
pub const DEPENDENCY_SEARCH_BUDGET: u128 = 1 << 26;

/// A linear code defined by a defining set, with its generator matrix.
#[derive(Debug, Clone)]
pub struct TraceCode {
    ctx: FieldCtx,
    set: DefiningSet,
    // m x n, row i = (Tr(alpha^i d_j))_j
    trace_matrix: Matrix,
    // k x n, equal to trace_matrix when it has full rank m
    gen: Matrix,
}

/// `C_D` for the given defining set; the dimension is measured as a rank.
pub fn build_code(ctx: &FieldCtx, set: &DefiningSet) -> Result<TraceCode> {
    if set.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    let m = ctx.m() as usize;
    let n = set.len();
    let mut rows = vec![Vec::with_capacity(n); m];
    for d in set.elements() {
        ctx.check(&[d])?;
        // alpha^i d for i = 0..m
        let mut v = d.clone();
        let alpha = ctx.alpha();
        for row in rows.iter_mut() {
            row.push(ctx.trace_linear(&v));
            v = ctx.mul(&v, &alpha);
        }
    }
    let trace_matrix = Matrix::from_rows(&rows, n, ctx.p());
    let gen = if trace_matrix.rank() == m {
        trace_matrix.clone()
    } else {
        trace_matrix.row_space_basis()
    };
    Ok(TraceCode {
        ctx: ctx.clone(),
        set: set.clone(),
        trace_matrix,
        gen,
    })
}

impl TraceCode {
    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn defining_set(&self) -> &DefiningSet {
        &self.set
    }

    pub fn n(&self) -> usize {
        self.set.len()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn trace_matrix(&self) -> &Matrix {
        &self.trace_matrix
    }

    /// `c_x = (Tr(x d_1), ..., Tr(x d_n))`, computed with field multiplications.
    pub fn codeword_for(&self, x: &FieldElement) -> Result<Vec<u32>> {
        self.ctx.check(&[x])?;
        Ok(self
            .set
            .elements()
            .iter()
            .map(|d| self.ctx.trace_linear(&self.ctx.mul(x, d)))
            .collect())
    }

    fn space(&self) -> CodewordSpace {
        CodewordSpace::new(self.gen.row_vecs(), self.p(), self.n())
    }

    fn check_message_space(&self, what: &'static str) -> Result<()> {
        let count = u128::from(self.p()).pow(self.k() as u32);
        self.ctx.limits().check(what, count)
    }

    /// Exact weight distribution by enumerating all `p^k` codewords.
    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        self.check_message_space("codewords")?;
        let n = self.n();
        let hist = self.space().fold(
            || vec![0u64; n + 1],
            |h, _, c| h[weight(c)] += 1,
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
        let counts = hist
            .into_iter()
            .enumerate()
            .filter(|&(_, a)| a > 0)
            .collect();
        Ok(WeightDistribution {
            n,
            k: self.k(),
            counts,
        })
    }

    pub fn minimum_distance(&self) -> Result<usize> {
        let wd = self.weight_distribution()?;
        wd.min_nonzero_weight()
            .ok_or_else(|| Error::Invalid("code has no nonzero codewords".into()))
    }

    /// All codewords in message order (index `sum x_i p^i` for message `x`).
    pub fn codewords(&self) -> Result<Vec<Vec<u32>>> {
        self.check_message_space("codewords")?;
        Ok(self.space().collect())
    }

    /// Generator matrix of the dual code, in reduced row echelon form.
    pub fn dual_generator(&self) -> Matrix {
        self.gen.null_space()
    }

    /// Smallest number of linearly dependent columns of the generator matrix.
    ///
    /// For redundancy `n - k <= 20` (and `p^{n-k}` under the ceiling) the dual
    /// is enumerated; otherwise a column-dependency search is run.
    pub fn dual_minimum_distance(&self) -> Result<DualDistance> {
        let r = self.n() - self.k();
        if r == 0 {
            return Err(Error::TrivialDual);
        }
        let dual_size = u128::from(self.p()).saturating_pow(r.min(64) as u32);
        if r <= DUAL_ENUMERATION_MAX_REDUNDANCY
            && dual_size <= u128::from(self.ctx.limits().enumeration)
        {
            Ok(self.dual_distance_by_enumeration())
        } else {
            Ok(dependency_search(&self.gen, DEPENDENCY_SEARCH_BUDGET))
        }
    }

    pub fn dual_distance_by_enumeration(&self) -> DualDistance {
        let h = self.dual_generator();
        let space = CodewordSpace::new(h.row_vecs(), self.p(), self.n());
        let best = space.fold(
            || usize::MAX,
            |best, _, c| {
                let w = weight(c);
                if w > 0 && w < *best {
                    *best = w;
                }
            },
            |a, b| a.min(b),
        );
        DualDistance {
            value: best,
            exact: true,
            method: DualMethod::Enumeration,
        }
    }

    pub fn dual_distance_by_search(&self) -> DualDistance {
        dependency_search(&self.gen, DEPENDENCY_SEARCH_BUDGET)
    }

    /// Composition (count of each GF(p) symbol) of every codeword, aggregated.
    pub fn complete_weight_table(&self) -> Result<CompleteWeightTable> {
        self.check_message_space("codewords")?;
        let p = self.p() as usize;
        let table = self.space().fold(
            BTreeMap::<Vec<usize>, u64>::new,
            |t, _, c| *t.entry(symbol_counts(c, p)).or_default() += 1,
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            },
        );
        Ok(CompleteWeightTable {
            n: self.n(),
            p: self.p(),
            table,
        })
    }

    pub fn report(&self) -> Result<CodeReport> {
        let wd = self.weight_distribution()?;
        Ok(CodeReport {
            p: self.ctx.p(),
            m: self.ctx.m(),
            kind: self.set.kind().clone(),
            n: self.n(),
            k: self.k(),
            d: wd.min_nonzero_weight().unwrap_or(0),
            weights: wd,
        })
    }
}

/// `{"p","m","kind","n","k","d","weights":[{"w","A"}]}`
#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub p: u32,
    pub m: u32,
    pub kind: SetKind,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub weights: WeightDistribution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteWeightTable {
    pub n: usize,
    pub p: u32,
    /// symbol counts `[#0, #1, ..., #(p-1)]` -> number of codewords
    pub table: BTreeMap<Vec<usize>, u64>,
}

#[derive(Serialize)]
struct CompositionRow<'a> {
    composition: &'a [usize],
    #[serde(rename = "A")]
    a: u64,
}

impl Serialize for CompleteWeightTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<CompositionRow> = self
            .table
            .iter()
            .map(|(c, &a)| CompositionRow { composition: c, a })
            .collect();
        rows.serialize(s)
    }
}

pub fn weight(c: &[u32]) -> usize {
    c.iter().filter(|&&x| x != 0).count()
}

pub fn symbol_counts(c: &[u32], p: usize) -> Vec<usize> {
    let mut counts = vec![0; p];
    for &x in c {
        counts[x as usize] += 1;
    }
    counts
}

/// The row space of a set of generators, walked in message order.
///
/// Message `x = (x_0, ..., x_{k-1})` with index `sum x_i p^i` maps to
/// `sum x_i row_i`. Consecutive messages differ by one row addition (plus
/// carries), so each codeword costs O(n) to produce.
pub(crate) struct CodewordSpace {
    rows: Vec<Vec<u32>>,
    p: u32,
    n: usize,
}

impl CodewordSpace {
    pub(crate) fn new(rows: Vec<Vec<u32>>, p: u32, n: usize) -> Self {
        CodewordSpace { rows, p, n }
    }

    fn k(&self) -> usize {
        self.rows.len()
    }

    /// Split point: the top `t` digits index independent blocks.
    fn blocks(&self) -> (usize, u64) {
        let p = u64::from(self.p);
        let mut t = 0;
        let mut count = 1u64;
        while t < self.k() && count < 256 {
            t += 1;
            count *= p;
        }
        (t, count)
    }

    fn add_row(cur: &mut [u32], row: &[u32], p: u32) {
        for (c, &r) in cur.iter_mut().zip(row) {
            let s = *c + r;
            *c = if s >= p { s - p } else { s };
        }
    }

    /// Visits every codeword of block `block` in increasing message index.
    fn walk_block(&self, t: usize, block: u64, mut visit: impl FnMut(u64, &[u32])) {
        let p = self.p;
        let low = self.k() - t;
        let mut cur = vec![0u32; self.n];
        let mut b = block;
        for row in &self.rows[low..] {
            let digit = (b % u64::from(p)) as u32;
            b /= u64::from(p);
            for _ in 0..digit {
                Self::add_row(&mut cur, row, p);
            }
        }
        let base_index = block * u64::from(p).pow(low as u32);
        let mut digits = vec![0u32; low];
        let mut index = base_index;
        visit(index, &cur);
        'outer: loop {
            let mut i = 0;
            loop {
                if i == low {
                    break 'outer;
                }
                digits[i] += 1;
                Self::add_row(&mut cur, &self.rows[i], p);
                if digits[i] == p {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            index += 1;
            visit(index, &cur);
        }
    }

    pub(crate) fn fold<A: Send>(
        &self,
        init: impl Fn() -> A + Sync + Send,
        step: impl Fn(&mut A, u64, &[u32]) + Sync + Send,
        merge: impl Fn(A, A) -> A + Sync + Send,
    ) -> A {
        let (t, blocks) = self.blocks();
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut acc = init();
                self.walk_block(t, b, |i, c| step(&mut acc, i, c));
                acc
            })
            .reduce(&init, &merge)
    }

    pub(crate) fn collect(&self) -> Vec<Vec<u32>> {
        let (t, blocks) = self.blocks();
        let parts: Vec<Vec<Vec<u32>>> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut out = Vec::new();
                self.walk_block(t, b, |_, c| out.push(c.to_vec()));
                out
            })
            .collect();
        parts.into_iter().flatten().collect()
    }
}

/// Normalises a nonzero vector so its first nonzero entry is 1.
fn normalize(v: &[u32], p: u32) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = crate::prime::mod_inv(lead, p).expect("nonzero");
    Some(
        v.iter()
            .map(|&x| crate::prime::mod_mul(x, inv, p))
            .collect(),
    )
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Smallest `w` such that some `w` columns of `gen` are linearly dependent.
///
/// Sizes 1 and 2 are found by zero and proportional columns. For `w >= 3`
/// every `(w-1)`-subset with leading coefficient 1 is combined and the
/// normalised sum is looked up among the remaining columns. Stops early with
/// a lower bound once the work for the next size exceeds `budget`.
pub fn dependency_search(gen: &Matrix, budget: u128) -> DualDistance {
    let n = gen.cols();
    let k = gen.rows();
    let p = gen.p();
    let cols: Vec<Vec<u32>> = (0..n).map(|c| gen.column(c)).collect();
    let found = |value| DualDistance {
        value,
        exact: true,
        method: DualMethod::DependencySearch,
    };
    if cols.iter().any(|c| c.iter().all(|&x| x == 0)) {
        return found(1);
    }
    let mut index: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (i, c) in cols.iter().enumerate() {
        index
            .entry(normalize(c, p).expect("nonzero"))
            .or_default()
            .push(i);
    }
    if index.values().any(|v| v.len() > 1) {
        return found(2);
    }
    // any k + 1 columns of a rank-k matrix are dependent
    for w in 3..=(k + 1).min(n) {
        let work = binomial(n, w - 1) * u128::from(p - 1).pow(w as u32 - 2);
        if work > budget {
            return DualDistance {
                value: w,
                exact: false,
                method: DualMethod::DependencySearch,
            };
        }
        let hit = combos(n, w - 1).par_bridge().any(|subset| {
            let mut coeffs = vec![1u32; w - 1];
            loop {
                let mut sum = vec![0u32; k];
                for (&c, &j) in coeffs.iter().zip(&subset) {
                    for (s, &g) in sum.iter_mut().zip(&cols[j]) {
                        *s = (*s + crate::prime::mod_mul(c, g, p)) % p;
                    }
                }
                if let Some(key) = normalize(&sum, p) {
                    if let Some(owners) = index.get(&key) {
                        if owners.iter().any(|o| !subset.contains(o)) {
                            return true;
                        }
                    }
                }
                // next coefficient vector, first entry fixed at 1
                let mut i = 1;
                loop {
                    if i >= coeffs.len() {
                        return false;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] == p {
                        coeffs[i] = 1;
                        i += 1;
                    } else {
                        break;
                    }
                }
            }
        });
        if hit {
            return found(w);
        }
    }
    found((k + 1).min(n) + usize::from(k + 1 > n))
}

/// Lexicographic `r`-subsets of `0..n`.
fn combos(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if r <= n { Some((0..r).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = r;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - r + i {
                c[i] += 1;
                for j in i + 1..r {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(p: u32, m: u32) -> TraceCode {
        let f = FieldCtx::new(p, m).unwrap();
        let d = build_defining_set(&f).unwrap();
        build_code(&f, &d).unwrap()
    }

    fn punctured(p: u32, m: u32) -> TraceCode {
        let f = FieldCtx::new(p, m).unwrap();
        let d = build_defining_set(&f).unwrap();
        let db = puncture_representatives(&f, &d).unwrap();
        build_code(&f, &db).unwrap()
    }

    #[test]
    fn defining_set_sizes() {
        let f = FieldCtx::new(3, 2).unwrap();
        let d = build_defining_set(&f).unwrap();
        assert_eq!(d.len(), 4);
        // oracle: direct scan with the Frobenius trace
        let scan: Vec<u64> = f
            .elements()
            .skip(1)
            .filter(|x| f.trace(&f.square(x)).is_zero())
            .map(|x| f.encode(&x))
            .collect();
        assert_eq!(d.encodings(), scan.as_slice());
        assert!(d.encodings().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_defining_set_is_reported() {
        let f = FieldCtx::new(5, 2).unwrap();
        assert_eq!(build_defining_set(&f), Err(Error::EmptyDefiningSet));
    }

    #[test]
    fn puncturing_keeps_one_per_orbit() {
        let f = FieldCtx::new(3, 3).unwrap();
        let d = build_defining_set(&f).unwrap();
        let db = puncture_representatives(&f, &d).unwrap();
        assert_eq!(db.len() * 2, d.len());
        assert_eq!(db.kind(), &SetKind::Punctured);
        for (i, x) in db.elements().iter().enumerate() {
            for y in &db.elements()[i + 1..] {
                for a in 1..3 {
                    assert_ne!(&f.scale(a, x), y);
                }
            }
        }
    }

    #[test]
    fn puncturing_rejects_unclosed_sets() {
        let f = FieldCtx::new(3, 2).unwrap();
        let set = DefiningSet::custom(&f, vec![f.one()]).unwrap();
        assert_eq!(
            puncture_representatives(&f, &set),
            Err(Error::NotScalingClosed)
        );
    }

    #[test]
    fn custom_set_validation() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert!(DefiningSet::custom(&f, vec![f.zero()]).is_err());
        assert!(DefiningSet::custom(&f, vec![f.one(), f.one()]).is_err());
        assert_eq!(
            DefiningSet::custom(&f, vec![]),
            Err(Error::EmptyDefiningSet)
        );
    }

    #[test]
    fn whole_multiplicative_group_is_one_weight() {
        let f = FieldCtx::new(3, 3).unwrap();
        let all = DefiningSet::from_predicate(&f, SetKind::Custom, |_| true).unwrap();
        let code = build_code(&f, &all).unwrap();
        assert_eq!(code.k(), 3);
        let wd = code.weight_distribution().unwrap();
        assert_eq!(wd.counts, BTreeMap::from([(0, 1), (18, 26)]));
    }

    #[test]
    fn message_order_matches_codeword_for() {
        let code = full(3, 4);
        assert_eq!(code.k(), 4);
        let words = code.codewords().unwrap();
        let f = code.field();
        for (i, x) in f.elements().enumerate() {
            assert_eq!(words[i], code.codeword_for(&x).unwrap());
        }
        // injective
        let distinct: std::collections::HashSet<_> = words.iter().collect();
        assert_eq!(distinct.len(), words.len());
    }

    #[test]
    fn zero_codeword() {
        let code = full(3, 3);
        let z = code.codeword_for(&code.field().zero()).unwrap();
        assert_eq!(weight(&z), 0);
        assert_eq!(z.len(), code.n());
    }

    #[test]
    fn small_weight_distributions() {
        // (3,3): Table 1 at m = 3 gives weights 4, 6, 8 with multiplicities 12, 8, 6
        let wd = full(3, 3).weight_distribution().unwrap();
        assert_eq!(wd.counts, BTreeMap::from([(0, 1), (4, 12), (6, 8), (8, 6)]));
        assert_eq!(wd.total(), 27);
        let wd = full(3, 2).weight_distribution().unwrap();
        assert_eq!(wd.total(), 9);
    }

    #[test]
    fn rank_deficient_sets_are_measured() {
        let f = FieldCtx::new(3, 3).unwrap();
        // GF(3)* inside GF(27) spans a one-dimensional code
        let set = DefiningSet::custom(&f, vec![f.one(), f.embed(2)]).unwrap();
        let code = build_code(&f, &set).unwrap();
        assert_eq!(code.k(), 1);
        let wd = code.weight_distribution().unwrap();
        assert_eq!(wd.total(), 3);
        assert_eq!(wd.counts, BTreeMap::from([(0, 1), (2, 2)]));
    }

    #[test]
    fn dual_generator_is_orthogonal() {
        let code = punctured(3, 4);
        let h = code.dual_generator();
        assert_eq!(h.rows(), code.n() - code.k());
        assert!(code.generator().mul(&h.transpose()).is_zero());
    }

    #[test]
    fn dual_distance_routes_agree() {
        for code in [
            full(3, 3),
            punctured(3, 3),
            punctured(3, 4),
            punctured(5, 3),
            full(3, 2),
            punctured(7, 2),
        ] {
            if code.n() == code.k() {
                continue;
            }
            let a = code.dual_distance_by_enumeration();
            let b = code.dual_distance_by_search();
            assert!(b.exact);
            assert_eq!(a.value, b.value, "n={} k={}", code.n(), code.k());
        }
    }

    #[test]
    fn long_dual_falls_back_to_search() {
        // redundancy 100 overflows any fixed-width count of dual codewords
        let d = full(5, 4).dual_minimum_distance().unwrap();
        assert_eq!(d.method, DualMethod::DependencySearch);
        assert_eq!(d.value, 2);
    }

    #[test]
    fn proportional_columns_give_two() {
        let m = Matrix::from_rows(&[vec![1, 2, 0], vec![1, 2, 1]], 3, 3);
        assert_eq!(dependency_search(&m, 1 << 20).value, 2);
        let m = Matrix::from_rows(&[vec![1, 0, 0], vec![0, 0, 1]], 3, 3);
        assert_eq!(dependency_search(&m, 1 << 20).value, 1);
    }

    #[test]
    fn combos_enumerate_subsets() {
        assert_eq!(combos(4, 2).count(), 6);
        assert_eq!(combos(3, 3).collect::<Vec<_>>(), vec![vec![0, 1, 2]]);
        assert_eq!(combos(2, 3).count(), 0);
    }

    #[test]
    fn complete_table_basics() {
        let code = full(3, 3);
        let t = code.complete_weight_table().unwrap();
        assert_eq!(t.table.values().sum::<u64>(), 27);
        assert_eq!(t.table.get(&vec![code.n(), 0, 0]), Some(&1));
        for comp in t.table.keys() {
            assert_eq!(comp.iter().sum::<usize>(), code.n());
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let limits = crate::field::Limits {
            enumeration: 100,
            planar: 100,
        };
        assert!(matches!(
            FieldCtx::with_limits(3, 5, limits),
            Err(Error::FieldTooLarge { .. })
        ));
        let f = FieldCtx::with_limits(3, 4, limits).unwrap();
        let d = build_defining_set(&f).unwrap();
        assert!(build_code(&f, &d).unwrap().weight_distribution().is_ok());
    }

    #[test]
    fn report_json_shape() {
        let code = punctured(3, 3);
        let json = serde_json::to_value(code.report().unwrap()).unwrap();
        assert_eq!(json["kind"], "punctured");
        assert_eq!(json["n"], 4);
        assert_eq!(json["weights"][0]["w"], 0);
        assert_eq!(json["weights"][0]["A"], 1);
    }
}
