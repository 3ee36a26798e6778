use num_traits::{One, Zero};
use serde::Serialize;

use crate::coset_graph::{build_coset_graph, CosetGraph};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::rational::{self, BigRational};

/// `W[i][j] = |l_i H ∩ K r_j|` for left representatives `l_i` and a right
/// transversal `r_j`.
///
/// For `H = K` the right transversal is `r_j = l_j^-1`, which is always a
/// right transversal and makes `W` symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightMatrix {
    pub n: usize,
    pub h_order: usize,
    pub left_reps: Vec<usize>,
    pub right_reps: Vec<usize>,
    /// Row-major.
    pub entries: Vec<u64>,
    pub matched: bool,
}

impl WeightMatrix {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }
}

/// Column `j` of the weight matrix lies over this right coset index.
fn column_cosets(g: &GroupTable, graph: &CosetGraph, matched: bool) -> Vec<usize> {
    if matched {
        graph.left_reps().iter().map(|&l| graph.right_coset_of(g.inv(l))).collect()
    } else {
        (0..graph.n()).collect()
    }
}

fn build(g: &GroupTable, h: &Subgroup, k: &Subgroup, graph: &CosetGraph) -> Result<WeightMatrix> {
    let n = graph.n();
    let matched = h == k;
    let cols = column_cosets(g, graph, matched);
    let mut by_coset = vec![0u64; n * n];
    for x in 0..g.order() {
        by_coset[graph.left_coset_of(x) * n + graph.right_coset_of(x)] += 1;
    }
    let mut entries = vec![0u64; n * n];
    for i in 0..n {
        for (j, &c) in cols.iter().enumerate() {
            entries[i * n + j] = by_coset[i * n + c];
        }
    }
    let right_reps = if matched {
        graph.left_reps().iter().map(|&l| g.inv(l)).collect()
    } else {
        graph.right_reps().to_vec()
    };
    let w = WeightMatrix {
        n,
        h_order: h.order(),
        left_reps: graph.left_reps().to_vec(),
        right_reps,
        entries,
        matched,
    };
    let target = h.order() as u64;
    for i in 0..n {
        let row: u64 = (0..n).map(|j| w.get(i, j)).sum();
        let col: u64 = (0..n).map(|j| w.get(j, i)).sum();
        if row != target || col != target {
            return Err(Error::Invariant(format!("weight matrix line {i} does not sum to |H|")));
        }
    }
    Ok(w)
}

pub fn weight_matrix(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<WeightMatrix> {
    let graph = build_coset_graph(g, h, k)?;
    build(g, h, k, &graph)
}

/// Facts about the doubly stochastic matrix `M = W/|H|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StochasticReport {
    pub n: usize,
    pub s: usize,
    /// Rows and columns grouped by component give blocks of `1/t` entries.
    pub block_form: bool,
    /// `D^2 = D` for the block-diagonal form `D`.
    pub idempotent: bool,
    pub trace: usize,
    pub rank: usize,
    /// Only decided for `H = K` with the matched transversal.
    pub symmetric: Option<bool>,
}

impl StochasticReport {
    pub fn holds(&self) -> bool {
        self.block_form && self.idempotent && self.trace == self.s && self.rank == self.s && self.symmetric != Some(false)
    }
}

/// Permute `M` to block-diagonal form and check its structure exactly:
/// blocks `J_t/t`, `D^2 = D`, trace and rank both `s`, and symmetry of `M`
/// itself when `H = K`.
pub fn stochastic_form_checks(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<StochasticReport> {
    let graph = build_coset_graph(g, h, k)?;
    let w = build(g, h, k, &graph)?;
    let n = w.n;
    let cols = column_cosets(g, &graph, w.matched);
    let mut col_of_coset = vec![0; n];
    for (j, &c) in cols.iter().enumerate() {
        col_of_coset[c] = j;
    }
    let mut rows = Vec::with_capacity(n);
    let mut perm_cols = Vec::with_capacity(n);
    let mut block_of = Vec::with_capacity(n);
    for (sigma, c) in graph.components().iter().enumerate() {
        rows.extend(c.left.iter().copied());
        perm_cols.extend(c.right.iter().map(|&r| col_of_coset[r]));
        block_of.extend(std::iter::repeat_n(sigma, c.t));
    }
    let ho = rational::int(h.order() as u64);
    let d: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&i| perm_cols.iter().map(|&j| rational::int(w.get(i, j)) / &ho).collect())
        .collect();

    let block_form = (0..n).all(|a| {
        (0..n).all(|b| {
            if block_of[a] == block_of[b] {
                d[a][b] == rational::ratio(1, graph.components()[block_of[a]].t as i64)
            } else {
                d[a][b].is_zero()
            }
        })
    });
    let idempotent = square_sparse(&d) == d;
    let trace_r: BigRational = (0..n).map(|a| d[a][a].clone()).sum();
    let trace = if trace_r.is_integer() { trace_r.to_integer().try_into().unwrap_or(usize::MAX) } else { usize::MAX };
    let rank = rank(d);
    let symmetric = w.matched.then(|| (0..n).all(|i| (0..i).all(|j| w.get(i, j) == w.get(j, i))));
    let report = StochasticReport {
        n,
        s: graph.s(),
        block_form,
        idempotent,
        trace,
        rank,
        symmetric,
    };
    if !report.holds() {
        return Err(Error::Invariant(format!("stochastic form check failed: {report:?}")));
    }
    Ok(report)
}

fn square_sparse(d: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = d.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for a in 0..n {
        for b in (0..n).filter(|&b| !d[a][b].is_zero()) {
            for c in (0..n).filter(|&c| !d[b][c].is_zero()) {
                out[a][c] += &d[a][b] * &d[b][c];
            }
        }
    }
    out
}

/// Rank by exact Gaussian elimination.
pub(crate) fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        let pivot: Vec<BigRational> = m[r].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        m[r] = pivot;
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
