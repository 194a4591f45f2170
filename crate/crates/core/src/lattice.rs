//! Integer symmetric forms, Smith normal form, and the exhaustive search for
//! orthogonal vectors of prescribed square under perfect pairings over `Z/m`.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::exec::Exec;

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("search space of {candidates} candidates exceeds the budget of {budget}")]
    SearchTooLarge { candidates: u128, budget: u128 },
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square")]
    NotSquare,
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // Enforce divisibility of the remaining block by the pivot.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let (bi, bj) = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .expect("pivot is nonzero");
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag
}

/// Symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramForm {
    entries: Vec<Vec<i64>>,
}

impl GramForm {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(GramForm { entries })
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let n = values.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { values[i] } else { 0 }).collect())
            .collect();
        GramForm { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn smith_normal_form(&self) -> Vec<u64> {
        smith_normal_form(&self.entries)
    }

    pub fn determinant(&self) -> i128 {
        determinant(&self.entries)
    }

    pub fn reduce(&self, modulus: u64) -> ModMatrix {
        ModMatrix::from_integers(&self.entries, modulus)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Matrix over `Z/m` with entries in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModMatrix {
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn from_integers(m: &[Vec<i64>], modulus: u64) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let entries = m
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(modulus as i64) as u64)
            .collect();
        ModMatrix { modulus, rows, cols, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn to_integers(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as i64).collect())
            .collect()
    }

    /// Determinant computed over the integers, then reduced.
    pub fn determinant(&self) -> u64 {
        determinant(&self.to_integers()).rem_euclid(self.modulus as i128) as u64
    }

    pub fn is_perfect(&self) -> bool {
        self.rows == self.cols && gcd(self.determinant(), self.modulus) == 1
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An injective linear map `(Z/m)^r1 -> (Z/m)^r2` exists iff `m^r1 <= m^r2`.
pub fn injectivity_cardinality_bound(rank_domain: u32, rank_codomain: u32, modulus: u64) -> bool {
    assert!(modulus >= 2, "modulus must be at least 2");
    let m = BigUint::from(modulus);
    m.pow(rank_domain) <= m.pow(rank_codomain)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingQuery {
    pub k: usize,
    pub square: i64,
    pub rank: usize,
    pub modulus: u64,
    pub orthogonal: bool,
}

impl EmbeddingQuery {
    pub fn new(k: usize, rank: usize, modulus: u64) -> Self {
        EmbeddingQuery {
            k,
            square: -2,
            rank,
            modulus,
            orthogonal: true,
        }
    }

    pub fn with_square(self, square: i64) -> Self {
        EmbeddingQuery { square, ..self }
    }

    fn validate(&self) -> Result<(), LatticeError> {
        if self.k == 0 || self.rank == 0 {
            return Err(LatticeError::InvalidQuery("k and rank must be at least 1".into()));
        }
        if self.modulus < 2 {
            return Err(LatticeError::InvalidQuery("modulus must be at least 2".into()));
        }
        Ok(())
    }

    fn form_count(&self) -> Option<u128> {
        let entries = (self.rank * (self.rank + 1) / 2) as u32;
        (self.modulus as u128).checked_pow(entries)
    }

    /// `m^(r(r+1)/2) * m^(r k)`: every symmetric form times every vector tuple.
    pub fn candidate_count(&self) -> Option<u128> {
        let vectors = (self.modulus as u128).checked_pow((self.rank * self.k) as u32)?;
        self.form_count()?.checked_mul(vectors)
    }

    fn target(&self, i: usize, j: usize) -> u64 {
        if i == j {
            self.square.rem_euclid(self.modulus as i64) as u64
        } else if self.orthogonal {
            0
        } else {
            u64::MAX
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub form: Vec<Vec<u64>>,
    pub vectors: Vec<Vec<u64>>,
}

impl Witness {
    /// `(v_i^T S v_j) mod m`
    pub fn pairings(&self, modulus: u64) -> Vec<Vec<u64>> {
        let pair = |a: &[u64], b: &[u64]| {
            let mut acc = 0u64;
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    acc = (acc + ai * self.form[i][j] % modulus * bj) % modulus;
                }
            }
            acc
        };
        self.vectors
            .iter()
            .map(|a| self.vectors.iter().map(|b| pair(a, b)).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingResult {
    pub query: EmbeddingQuery,
    pub candidates: u128,
    pub feasible: bool,
    pub witness: Option<Witness>,
}

/// Exhaustive search for a perfect symmetric `S` over `Z/m` and vectors `v_1..v_k`
/// with `v_i^T S v_j = square * delta_ij`. Forms are enumerated in lexicographic
/// order of their upper triangle, vectors in lexicographic order; the first hit
/// in that order is returned regardless of `exec`.
pub fn embedding_search(
    q: &EmbeddingQuery,
    budget: u128,
    exec: Exec,
) -> Result<EmbeddingResult, LatticeError> {
    q.validate()?;
    let candidates = q.candidate_count().unwrap_or(u128::MAX);
    if candidates > budget {
        return Err(LatticeError::SearchTooLarge { candidates, budget });
    }
    let forms = q.form_count().expect("bounded by candidates") as u64;
    let witness = exec.find_map_first(forms, |idx| {
        let form = decode_form(idx, q.rank, q.modulus);
        let mm = ModMatrix::from_integers(
            &form.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<_>>(),
            q.modulus,
        );
        if !mm.is_perfect() {
            return None;
        }
        let vectors = search_vectors(q, &form)?;
        Some(Witness { form, vectors })
    });
    Ok(EmbeddingResult {
        query: *q,
        candidates,
        feasible: witness.is_some(),
        witness,
    })
}

fn decode_form(mut idx: u64, r: usize, m: u64) -> Vec<Vec<u64>> {
    let mut upper = vec![0u64; r * (r + 1) / 2];
    for e in upper.iter_mut().rev() {
        *e = idx % m;
        idx /= m;
    }
    let mut s = vec![vec![0u64; r]; r];
    let mut it = upper.into_iter();
    for i in 0..r {
        for j in i..r {
            let v = it.next().expect("sized");
            s[i][j] = v;
            s[j][i] = v;
        }
    }
    s
}

fn all_vectors(r: usize, m: u64) -> Vec<Vec<u64>> {
    let total = m.pow(r as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0u64; r];
            for e in v.iter_mut().rev() {
                *e = idx % m;
                idx /= m;
            }
            v
        })
        .collect()
}

fn search_vectors(q: &EmbeddingQuery, form: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let m = q.modulus;
    let pair = |a: &[u64], b: &[u64]| {
        let mut acc = 0u64;
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                acc = (acc + ai * form[i][j] % m * bj) % m;
            }
        }
        acc
    };
    let target_sq = q.target(0, 0);
    // Only vectors of the right square can appear.
    let pool: Vec<Vec<u64>> = all_vectors(q.rank, m)
        .into_iter()
        .filter(|v| pair(v, v) == target_sq)
        .collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(q.k);
    fn dfs(
        q: &EmbeddingQuery,
        pool: &[Vec<u64>],
        chosen: &mut Vec<usize>,
        pair: &dyn Fn(&[u64], &[u64]) -> u64,
    ) -> bool {
        if chosen.len() == q.k {
            return true;
        }
        let i = chosen.len();
        for c in 0..pool.len() {
            let ok = chosen.iter().enumerate().all(|(j, &pj)| {
                let t = q.target(i, j);
                t == u64::MAX || pair(&pool[c], &pool[pj]) == t
            });
            if ok {
                chosen.push(c);
                if dfs(q, pool, chosen, pair) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    dfs(q, &pool, &mut chosen, &pair).then(|| chosen.iter().map(|&c| pool[c].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRow {
    pub k: usize,
    pub rank: usize,
    pub modulus: u64,
    pub square: i64,
    pub candidates: u128,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfSummary {
    pub rank: usize,
    pub invariant_factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CardinalityBound {
    pub rank_domain: u32,
    pub rank_codomain: u32,
    pub modulus: u64,
    pub injective_possible: bool,
    /// Injectivity of the map is a hypothesis here, not derived.
    pub assumption: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K3Report {
    pub snf: SnfSummary,
    pub cardinality_bound: CardinalityBound,
    pub search_table: Vec<SearchRow>,
}

pub const K3_CLASSES: u32 = 21;
pub const K3_TARGET_RANK: u32 = 20;
pub const K3_MODULUS: u64 = 4;

/// Instantiates the obstruction: 21 orthogonal (-2)-classes, a free rank-20 target
/// over `Z/4`, and the small exhaustive search table for `k <= 3`, `r <= 2`.
pub fn k3_obstruction_report(budget: u128, exec: Exec) -> Result<K3Report, LatticeError> {
    let gram = GramForm::diagonal(&[-2; K3_CLASSES as usize]);
    let mut search_table = Vec::new();
    for k in 1..=3 {
        for rank in 1..=2 {
            let q = EmbeddingQuery::new(k, rank, K3_MODULUS);
            let res = embedding_search(&q, budget, exec)?;
            search_table.push(SearchRow {
                k,
                rank,
                modulus: q.modulus,
                square: q.square,
                candidates: res.candidates,
                feasible: res.feasible,
            });
        }
    }
    Ok(K3Report {
        snf: SnfSummary {
            rank: gram.rank(),
            invariant_factors: gram.smith_normal_form(),
        },
        cardinality_bound: CardinalityBound {
            rank_domain: K3_CLASSES,
            rank_codomain: K3_TARGET_RANK,
            modulus: K3_MODULUS,
            injective_possible: injectivity_cardinality_bound(K3_CLASSES, K3_TARGET_RANK, K3_MODULUS),
            assumption: "the map from the span of the classes to the target is injective",
        },
        search_table,
    })
}
