//! Generic machinery for positively multiplicative graphs: path matrices,
//! multiplicative bases, positivity certificates, structure constants,
//! graded expansion and typed isomorphism.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::Rat;
use crate::laurent::{poly_gauss_jordan_inverse, FFMatrix, LaurentPoly, RationalFunction};

/// One weighted typed arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    /// Type in `I = {0..n}`, or `None` for untyped graphs.
    pub etype: Option<usize>,
    pub weight: LaurentPoly,
}

/// A finite weighted digraph with ordered, labelled vertices.
///
/// The adjacency matrix follows the convention `A[i][j]` = sum of the weights
/// of the arrows from `v_j` to `v_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    pub nvars: usize,
    pub var_names: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl WeightedDigraph {
    pub fn new(nvars: usize, var_names: Vec<String>, vertices: Vec<String>) -> Self {
        assert_eq!(nvars, var_names.len());
        WeightedDigraph { nvars, var_names, vertices, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, src: usize, dst: usize, etype: Option<usize>, weight: LaurentPoly) {
        assert!(!weight.is_zero(), "edge weights must be nonzero");
        assert!(weight.is_nonnegative(), "edge weights must have nonnegative coefficients");
        assert!(src < self.vertices.len() && dst < self.vertices.len());
        self.edges.push(Edge { src, dst, etype, weight });
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Adjacency matrix with polynomial entries.
    pub fn adjacency_poly(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.vertices.len();
        let mut a = vec![vec![LaurentPoly::zero(self.nvars); n]; n];
        for e in &self.edges {
            a[e.dst][e.src] = a[e.dst][e.src].add(&e.weight);
        }
        a
    }

    pub fn adjacency(&self) -> FFMatrix {
        FFMatrix::from_polys(&self.adjacency_poly())
    }

    /// Sparse matrix-vector product `A v` using the edge list.
    pub fn apply_adjacency(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(self.nvars); self.vertices.len()];
        for e in &self.edges {
            if !v[e.src].is_zero() {
                out[e.dst].add_assign(&v[e.src].mul(&e.weight));
            }
        }
        out
    }

    /// Splits every polynomial weight into parallel monomial arrows.
    pub fn split_polynomial_weights(&self) -> WeightedDigraph {
        let mut g = WeightedDigraph::new(
            self.nvars,
            self.var_names.clone(),
            self.vertices.clone(),
        );
        for e in &self.edges {
            for (exps, coef) in e.weight.terms() {
                g.add_edge(
                    e.src,
                    e.dst,
                    e.etype,
                    LaurentPoly::monomial(coef.clone(), exps.clone()),
                );
            }
        }
        g
    }
}

/// The path matrix `M_k`: column `m` holds the total weights of length-`m`
/// paths out of `v_k`.
pub fn path_matrix(g: &WeightedDigraph, k: usize) -> FFMatrix {
    FFMatrix::from_polys(&path_matrix_poly(g, k))
}

pub fn path_matrix_poly(g: &WeightedDigraph, k: usize) -> Vec<Vec<LaurentPoly>> {
    let n = g.vertex_count();
    let mut cols = Vec::with_capacity(n);
    let mut v = vec![LaurentPoly::zero(g.nvars); n];
    v[k] = LaurentPoly::one(g.nvars);
    for _ in 0..n {
        cols.push(v.clone());
        v = g.apply_adjacency(&v);
    }
    (0..n)
        .map(|i| (0..n).map(|m| cols[m][i].clone()).collect())
        .collect()
}

/// Outcome of the multiplicative-basis computation.
#[derive(Debug, Clone, PartialEq)]
pub enum PMVerdict {
    PositivelyMultiplicative,
    /// Multiplicative at the base vertex, but some structure constant is not
    /// in `Q_+[Z^{+-1}]`; the witness records the offending `(j, k, i)`.
    MultiplicativeNotPositive { witness: (usize, usize, usize) },
    /// The path matrix is singular; the kernel vector certifies it.
    NotMultiplicative { reason: String, kernel: Vec<RationalFunction> },
}

/// A multiplicative basis (or the certified failure to produce one) at a
/// chosen base vertex.
#[derive(Debug, Clone)]
pub struct PMCertificate {
    pub base_vertex: usize,
    pub verdict: PMVerdict,
    /// Determinant of the path matrix at the base vertex.
    pub det: LaurentPoly,
    /// Monic minimal polynomial coefficients `c_0, ..., c_{n-1}, 1`
    /// (empty when not multiplicative).
    pub min_poly: Vec<RationalFunction>,
    /// Basis matrices `b_1..b_n` with `b_{base} = I`
    /// (empty when not multiplicative).
    pub basis: Vec<FFMatrix>,
}

impl PMCertificate {
    pub fn is_positively_multiplicative(&self) -> bool {
        matches!(self.verdict, PMVerdict::PositivelyMultiplicative)
    }

    /// Structure constant `c_{j,k}^i`, i.e. the coefficient of `b_i` in
    /// `b_j b_k`; equals entry `(i, k)` of `b_j`.
    pub fn structure_constant(&self, j: usize, k: usize, i: usize) -> &RationalFunction {
        self.basis[j].entry(i, k)
    }

    /// Degree of the minimal polynomial of the adjacency matrix.
    pub fn min_poly_degree(&self) -> usize {
        self.min_poly.len().saturating_sub(1)
    }
}

/// Computes the multiplicative basis of `g` at `base` via the path-matrix
/// criterion, together with the positivity verdict on all structure
/// constants.
pub fn multiplicative_basis_at(g: &WeightedDigraph, base: usize) -> PMCertificate {
    let n = g.vertex_count();
    let nvars = g.nvars;
    let m = path_matrix_poly(g, base);
    let (inv_times_det, det) = match poly_gauss_jordan_inverse(&m) {
        Ok(res) => res,
        Err(kernel) => {
            return PMCertificate {
                base_vertex: base,
                verdict: PMVerdict::NotMultiplicative {
                    reason: String::from(
                        "path matrix at the base vertex is singular; the graph is not \
                         multiplicative there with maximal dimension",
                    ),
                    kernel,
                },
                det: LaurentPoly::zero(nvars),
                min_poly: Vec::new(),
                basis: Vec::new(),
            };
        }
    };

    // Krylov columns from every vertex: pow_cols[k][m] = A^m e_k.
    let mut pow_cols: Vec<Vec<Vec<LaurentPoly>>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut cols = Vec::with_capacity(n + 1);
        let mut v = vec![LaurentPoly::zero(nvars); n];
        v[k] = LaurentPoly::one(nvars);
        for _ in 0..=n {
            cols.push(v.clone());
            v = g.apply_adjacency(&v);
        }
        pow_cols.push(cols);
    }

    // Minimal polynomial: the columns of M are independent, so the monic
    // degree-n annihilator of e_base is mu(T) = T^n - sum c_m T^m with
    // M c = A^n e_base, and deg mu = n forces mu(A) = 0.
    let a_n_e = &pow_cols[base][n];
    let mut min_poly = Vec::with_capacity(n + 1);
    for m_idx in 0..n {
        let mut num = LaurentPoly::zero(nvars);
        for r in 0..n {
            num.add_assign(&inv_times_det[m_idx][r].mul(&a_n_e[r]));
        }
        min_poly.push(RationalFunction::new(num.neg(), det.clone()));
    }
    min_poly.push(RationalFunction::one(nvars));

    // Basis matrices: b_j = sum_m c^{(j)}_m A^m with c^{(j)} = M^{-1} e_j,
    // so entry (i,k) of b_j is (sum_m N[m][j] (A^m e_k)[i]) / det.
    // The tensor symmetry b_j e_k = b_k e_j halves the work.
    let basis = assemble_basis(n, nvars, &inv_times_det, &pow_cols, &det);

    // b_base must be the identity and the tensor must be symmetric
    // (the b_j are polynomials in A, hence commute).
    assert_eq!(basis[base], FFMatrix::identity(n, nvars), "b_base = 1 failed");
    for j in 0..n {
        for k in 0..j {
            for i in 0..n {
                assert!(
                    basis[j].entry(i, k) == basis[k].entry(i, j),
                    "structure-constant tensor must be symmetric in (j,k)"
                );
            }
        }
    }

    // Mat_B(m_A) = A: A b_j = sum_i A[i][j] b_i, column by column.
    let a_poly = g.adjacency_poly();
    for j in 0..n {
        for k in 0..n {
            for i in 0..n {
                // (A b_j)[i][k]
                let mut lhs = RationalFunction::zero(nvars);
                for e in &g.edges {
                    if e.dst == i {
                        let t = basis[j]
                            .entry(e.src, k)
                            .mul(&RationalFunction::from_poly(e.weight.clone()));
                        lhs = lhs.add(&t);
                    }
                }
                let mut rhs = RationalFunction::zero(nvars);
                for (l, row) in a_poly.iter().enumerate() {
                    if !row[j].is_zero() {
                        let t = basis[l]
                            .entry(i, k)
                            .mul(&RationalFunction::from_poly(row[j].clone()));
                        rhs = rhs.add(&t);
                    }
                }
                assert!(lhs == rhs, "Mat_B(m_A) = A failed at ({}, {}, {})", j, k, i);
            }
        }
    }

    // Positivity scan.
    let mut witness = None;
    'scan: for j in 0..n {
        for k in 0..n {
            for i in 0..n {
                match basis[j].entry(i, k).to_poly() {
                    Some(p) if p.is_nonnegative() => {}
                    _ => {
                        witness = Some((j, k, i));
                        break 'scan;
                    }
                }
            }
        }
    }
    let verdict = match witness {
        None => PMVerdict::PositivelyMultiplicative,
        Some(w) => PMVerdict::MultiplicativeNotPositive { witness: w },
    };
    PMCertificate { base_vertex: base, verdict, det, min_poly, basis }
}

fn assemble_basis(
    n: usize,
    nvars: usize,
    inv_times_det: &[Vec<LaurentPoly>],
    pow_cols: &[Vec<Vec<LaurentPoly>>],
    det: &LaurentPoly,
) -> Vec<FFMatrix> {
    use crate::laurent::IntPoly;
    // integer fast path
    let int_inv: Option<Vec<Vec<IntPoly>>> = inv_times_det
        .iter()
        .map(|row| row.iter().map(|p| p.to_int()).collect())
        .collect();
    let int_cols: Option<Vec<Vec<Vec<IntPoly>>>> = pow_cols
        .iter()
        .map(|per_k| {
            per_k
                .iter()
                .map(|col| col.iter().map(|p| p.to_int()).collect())
                .collect()
        })
        .collect();
    let int_det = det.to_int();
    if let (Some(inv), Some(cols), Some(idet)) = (int_inv, int_cols, int_det) {
        // columns[j][k] = b_j e_k as integer numerators over det
        let mut columns: Vec<Vec<Option<Vec<IntPoly>>>> = vec![vec![None; n]; n];
        for j in 0..n {
            for k in j..n {
                let mut acc = vec![IntPoly::zero(); n];
                for (m_idx, row) in inv.iter().enumerate() {
                    if row[j].is_zero() {
                        continue;
                    }
                    for (i, u) in cols[k][m_idx].iter().enumerate() {
                        if !u.is_zero() {
                            acc[i].add_assign(&row[j].mul(u));
                        }
                    }
                }
                columns[j][k] = Some(acc.clone());
                if k != j {
                    columns[k][j] = Some(acc);
                }
            }
        }
        return (0..n)
            .map(|j| {
                FFMatrix::from_fn(n, n, |i, k| {
                    let num = columns[j][k].as_ref().unwrap()[i].clone();
                    match num.divide_exact(&idet) {
                        Some(q) => RationalFunction::from_poly(q.to_laurent(nvars)),
                        None => RationalFunction::new(num.to_laurent(nvars), det.clone()),
                    }
                })
            })
            .collect();
    }
    (0..n)
        .map(|j| {
            FFMatrix::from_fn(n, n, |i, k| {
                let mut num = LaurentPoly::zero(nvars);
                for (m_idx, row) in inv_times_det.iter().enumerate() {
                    if !row[j].is_zero() {
                        num.add_assign(&row[j].mul(&pow_cols[k][m_idx][i]));
                    }
                }
                RationalFunction::new(num, det.clone())
            })
        })
        .collect()
}

/// A graded expansion of a monomial-weighted graph.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub graph: WeightedDigraph,
    /// Vertex indices per level, starting at level 1 = the root.
    pub levels: Vec<Vec<usize>>,
    /// `(original vertex, exponent vector, level)` per expansion vertex.
    pub vertex_data: Vec<(usize, Vec<i64>, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandError(pub String);

impl core::fmt::Display for ExpandError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Expands `g` from `root` through `depth` levels. Every arrow weight must be
/// a single monomial; split polynomial weights into parallel arrows first
/// (see [`WeightedDigraph::split_polynomial_weights`]).
pub fn expand(g: &WeightedDigraph, root: usize, depth: usize) -> Result<Expansion, ExpandError> {
    for e in &g.edges {
        if e.weight.as_monomial().is_none() {
            return Err(ExpandError(String::from(
                "expansion needs monomial arrow weights; split polynomial weights \
                 into parallel arrows first",
            )));
        }
    }
    let mut vertex_data: Vec<(usize, Vec<i64>, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, Vec<i64>, usize), usize> = BTreeMap::new();
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut out_edges: Vec<Edge> = Vec::new();

    if depth == 0 {
        let graph = WeightedDigraph::new(g.nvars, g.var_names.clone(), Vec::new());
        return Ok(Expansion { graph, levels, vertex_data });
    }

    let root_key = (root, vec![0i64; g.nvars], 1usize);
    index.insert(root_key.clone(), 0);
    vertex_data.push(root_key);
    levels.push(vec![0]);

    for level in 1..depth {
        let mut next_level = Vec::new();
        let current = levels[level - 1].clone();
        for &vid in &current {
            let (orig, beta, _) = vertex_data[vid].clone();
            for e in &g.edges {
                if e.src != orig {
                    continue;
                }
                let (exps, coef) = e.weight.as_monomial().unwrap();
                let new_beta: Vec<i64> = beta.iter().zip(exps).map(|(a, b)| a + b).collect();
                let key = (e.dst, new_beta, level + 1);
                let tid = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = vertex_data.len();
                        index.insert(key.clone(), t);
                        vertex_data.push(key);
                        next_level.push(t);
                        t
                    }
                };
                out_edges.push(Edge {
                    src: vid,
                    dst: tid,
                    etype: e.etype,
                    weight: LaurentPoly::constant(coef.clone(), g.nvars),
                });
            }
        }
        if next_level.is_empty() {
            break;
        }
        next_level.sort_unstable();
        levels.push(next_level);
    }

    let labels: Vec<String> = vertex_data
        .iter()
        .map(|(orig, beta, level)| {
            let mono = LaurentPoly::monomial(Rat::from_integer(1.into()), beta.clone());
            format!("({},{},{})", g.vertices[*orig], mono.to_text(&g.var_names), level)
        })
        .collect();
    let mut graph = WeightedDigraph::new(g.nvars, g.var_names.clone(), labels);
    for e in out_edges {
        graph.add_edge(e.src, e.dst, e.etype, e.weight);
    }
    Ok(Expansion { graph, levels, vertex_data })
}

/// Options for [`typed_isomorphic`].
#[derive(Debug, Clone, Copy)]
pub struct IsoOptions {
    pub respect_types: bool,
    pub respect_weights: bool,
}

/// Exact isomorphism search; returns a vertex mapping `g1 -> g2` when the
/// graphs are isomorphic under the selected attributes.
pub fn typed_isomorphic(
    g1: &WeightedDigraph,
    g2: &WeightedDigraph,
    options: IsoOptions,
) -> Option<Vec<usize>> {
    if g1.vertices.len() != g2.vertices.len() || g1.edges.len() != g2.edges.len() {
        return None;
    }
    let n = g1.vertices.len();
    let key1 = refine_classes(g1, options);
    let key2 = refine_classes(g2, options);
    {
        let mut sorted1 = key1.clone();
        let mut sorted2 = key2.clone();
        sorted1.sort();
        sorted2.sort();
        if sorted1 != sorted2 {
            return None;
        }
    }
    let adj1 = edge_multimap(g1, options);
    let adj2 = edge_multimap(g2, options);

    // Backtracking, most-constrained vertices first.
    let mut class_size: BTreeMap<&String, usize> = BTreeMap::new();
    for k in &key1 {
        *class_size.entry(k).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&key1[v]], v));

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if backtrack(0, &order, &key1, &key2, &adj1, &adj2, &mut mapping, &mut used) {
        Some(mapping)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    pos: usize,
    order: &[usize],
    key1: &[String],
    key2: &[String],
    adj1: &BTreeMap<(usize, usize), Vec<String>>,
    adj2: &BTreeMap<(usize, usize), Vec<String>>,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    for w in 0..key2.len() {
        if used[w] || key1[v] != key2[w] {
            continue;
        }
        let mut ok = adj1.get(&(v, v)) == adj2.get(&(w, w));
        if ok {
            for &u in &order[..pos] {
                let mu = mapping[u];
                if adj1.get(&(v, u)) != adj2.get(&(w, mu))
                    || adj1.get(&(u, v)) != adj2.get(&(mu, w))
                {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            mapping[v] = w;
            used[w] = true;
            if backtrack(pos + 1, order, key1, key2, adj1, adj2, mapping, used) {
                return true;
            }
            used[w] = false;
            mapping[v] = usize::MAX;
        }
    }
    false
}

fn edge_key(e: &Edge, names: &[String], options: IsoOptions) -> String {
    let t = if options.respect_types {
        match e.etype {
            Some(t) => format!("t{}", t),
            None => String::from("t-"),
        }
    } else {
        String::new()
    };
    let w = if options.respect_weights {
        e.weight.to_text(names)
    } else {
        String::new()
    };
    format!("{}|{}", t, w)
}

fn edge_multimap(g: &WeightedDigraph, options: IsoOptions) -> BTreeMap<(usize, usize), Vec<String>> {
    let mut map: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for e in &g.edges {
        map.entry((e.src, e.dst))
            .or_default()
            .push(edge_key(e, &g.var_names, options));
    }
    for v in map.values_mut() {
        v.sort();
    }
    map
}

fn refine_classes(g: &WeightedDigraph, options: IsoOptions) -> Vec<String> {
    let n = g.vertices.len();
    let mut keys: Vec<String> = vec![String::new(); n];
    for (v, key) in keys.iter_mut().enumerate() {
        let mut outs: Vec<String> = g
            .edges
            .iter()
            .filter(|e| e.src == v)
            .map(|e| edge_key(e, &g.var_names, options))
            .collect();
        outs.sort();
        let mut ins: Vec<String> = g
            .edges
            .iter()
            .filter(|e| e.dst == v)
            .map(|e| edge_key(e, &g.var_names, options))
            .collect();
        ins.sort();
        *key = format!("O[{}]I[{}]", outs.join(","), ins.join(","));
    }
    // 1-WL refinement with neighbour classes.
    for _ in 0..n {
        let mut new_keys = Vec::with_capacity(n);
        for v in 0..n {
            let mut nbr: Vec<String> = g
                .edges
                .iter()
                .filter(|e| e.src == v)
                .map(|e| format!(">{}:{}", edge_key(e, &g.var_names, options), keys[e.dst]))
                .chain(
                    g.edges
                        .iter()
                        .filter(|e| e.dst == v)
                        .map(|e| format!("<{}:{}", edge_key(e, &g.var_names, options), keys[e.src])),
                )
                .collect();
            nbr.sort();
            new_keys.push(format!("{}#{}", keys[v], nbr.join(";")));
        }
        let distinct_old: BTreeSet<&String> = keys.iter().collect();
        let distinct_new: BTreeSet<&String> = new_keys.iter().collect();
        let stable = distinct_old.len() == distinct_new.len();
        keys = new_keys;
        if stable {
            break;
        }
    }
    keys
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::rat;
    use alloc::string::ToString;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// The six-vertex worked example over z1, z2, z3.
    fn worked_example() -> WeightedDigraph {
        let mut g = WeightedDigraph::new(
            3,
            names(&["z1", "z2", "z3"]),
            names(&["v1", "v2", "v3", "v4", "v5", "v6"]),
        );
        let one = LaurentPoly::one(3);
        let z = |i: usize| LaurentPoly::var(i, 3);
        g.add_edge(0, 1, None, one.clone());
        g.add_edge(1, 2, None, one.clone());
        g.add_edge(1, 3, None, one.clone());
        g.add_edge(2, 4, None, one.clone());
        g.add_edge(3, 4, None, one.clone());
        g.add_edge(4, 5, None, one);
        g.add_edge(2, 0, None, z(0));
        g.add_edge(3, 0, None, z(2));
        g.add_edge(4, 0, None, z(1));
        g.add_edge(5, 1, None, z(1));
        g.add_edge(5, 2, None, z(2));
        g.add_edge(5, 3, None, z(0));
        g
    }

    #[test]
    fn single_vertex_path_matrix() {
        let g = WeightedDigraph::new(0, vec![], names(&["v"]));
        let m = path_matrix(&g, 0);
        assert_eq!(m, FFMatrix::identity(1, 0));
    }

    #[test]
    fn worked_example_path_matrix() {
        let g = worked_example();
        let m = path_matrix(&g, 0);
        let z = |i: usize| LaurentPoly::var(i, 3);
        let zero = || LaurentPoly::zero(3);
        let one = || LaurentPoly::one(3);
        let expected: Vec<Vec<LaurentPoly>> = vec![
            vec![one(), zero(), zero(), z(0).add(&z(2)), z(1).scale(&rat(2)), zero()],
            vec![zero(), one(), zero(), zero(), z(0).add(&z(2)), z(1).scale(&rat(4))],
            vec![zero(), zero(), one(), zero(), zero(), z(0).add(&z(2).scale(&rat(3)))],
            vec![zero(), zero(), one(), zero(), zero(), z(0).scale(&rat(3)).add(&z(2))],
            vec![zero(), zero(), zero(), LaurentPoly::from_int(2, 3), zero(), zero()],
            vec![zero(), zero(), zero(), zero(), LaurentPoly::from_int(2, 3), zero()],
        ];
        assert_eq!(m, FFMatrix::from_polys(&expected));
    }

    #[test]
    fn worked_example_certificate() {
        let g = worked_example();
        let cert = multiplicative_basis_at(&g, 0);
        assert!(cert.is_positively_multiplicative());
        assert_eq!(cert.min_poly_degree(), 6);
        // mu = T^6 - 2(z1+z3) T^3 - 4 z2 T^2 + (z1-z3)^2
        let z = |i: usize| LaurentPoly::var(i, 3);
        let c0 = z(0).sub(&z(2)).pow(2);
        let c2 = z(1).scale(&rat(-4));
        let c3 = z(0).add(&z(2)).scale(&rat(-2));
        let zero = LaurentPoly::zero(3);
        let expected = [c0, zero.clone(), c2, c3, zero.clone(), zero, LaurentPoly::one(3)];
        for (got, want) in cert.min_poly.iter().zip(expected.iter()) {
            assert!(got == &RationalFunction::from_poly(want.clone()));
        }
        // b_3 matches the printed matrix.
        let z1z3 = z(0).mul(&z(2));
        let zz = || LaurentPoly::zero(3);
        let one = || LaurentPoly::one(3);
        let rows: Vec<Vec<LaurentPoly>> = vec![
            vec![zz(), z(0), z(1), zz(), zz(), z1z3],
            vec![zz(), zz(), z(0), zz(), z(1), zz()],
            vec![one(), zz(), zz(), zz(), zz(), zz()],
            vec![zz(), zz(), zz(), zz(), z(0), z(1)],
            vec![zz(), one(), zz(), zz(), zz(), z(0)],
            vec![zz(), zz(), zz(), one(), zz(), zz()],
        ];
        assert_eq!(cert.basis[2], FFMatrix::from_polys(&rows));
        // The printed inverse of M_1, checked entrywise.
        let m1 = path_matrix(&g, 0);
        let inv = m1.inverse().unwrap();
        let half = crate::cartan::ratio(1, 2);
        let two_z2 = z(1).scale(&rat(2));
        let z1_minus_z3 = z(0).sub(&z(2));
        let checks: Vec<(usize, usize, RationalFunction)> = vec![
            (0, 0, RationalFunction::one(3)),
            (0, 4, RationalFunction::from_poly(z(0).add(&z(2)).scale(&(-half.clone())))),
            (0, 5, RationalFunction::from_poly(z(1).neg())),
            (1, 2, RationalFunction::new(two_z2.clone(), z1_minus_z3.clone())),
            (1, 3, RationalFunction::new(two_z2.neg(), z1_minus_z3.clone())),
            (2, 2, RationalFunction::new(z(0).scale(&rat(3)).add(&z(2)), z1_minus_z3.scale(&rat(2)))),
            (2, 3, RationalFunction::new(z(0).add(&z(2).scale(&rat(3))).neg(), z1_minus_z3.scale(&rat(2)))),
            (3, 4, RationalFunction::from_poly(LaurentPoly::constant(half.clone(), 3))),
            (4, 5, RationalFunction::from_poly(LaurentPoly::constant(half, 3))),
            (5, 2, RationalFunction::new(LaurentPoly::from_int(-1, 3), z1_minus_z3.scale(&rat(2)))),
            (5, 3, RationalFunction::new(LaurentPoly::one(3), z1_minus_z3.scale(&rat(2)))),
        ];
        for (i, j, want) in checks {
            assert!(inv.entry(i, j) == &want, "entry ({},{})", i, j);
        }
        // The basis has all entries in Q_+[z1,z2,z3].
        for b in &cert.basis {
            for i in 0..6 {
                for k in 0..6 {
                    let p = b.entry(i, k).to_poly().unwrap();
                    assert!(p.is_nonnegative());
                }
            }
        }
        // minimal_polynomial on the adjacency agrees with the certificate.
        let mu = crate::laurent::minimal_polynomial(&g.adjacency());
        assert_eq!(mu.len(), cert.min_poly.len());
        for (a, b) in mu.iter().zip(&cert.min_poly) {
            assert!(a == b);
        }
        // mu(A) = 0, checked directly.
        let a = g.adjacency();
        let nvars = 3;
        let mut acc = FFMatrix::from_fn(6, 6, |_, _| RationalFunction::zero(nvars));
        let mut power = FFMatrix::identity(6, nvars);
        for c in &cert.min_poly {
            if !c.is_zero() {
                let scaled = FFMatrix::from_fn(6, 6, |i, j| power.entry(i, j).mul(c));
                acc = FFMatrix::from_fn(6, 6, |i, j| acc.entry(i, j).add(scaled.entry(i, j)));
            }
            power = a.mul(&power);
        }
        for i in 0..6 {
            for j in 0..6 {
                assert!(acc.entry(i, j).is_zero());
            }
        }
    }

    fn dihedral(a: i64, b: i64, c: i64, d: i64) -> WeightedDigraph {
        let mut g = WeightedDigraph::new(0, vec![], names(&["v1", "v2", "v3"]));
        g.add_edge(0, 1, None, LaurentPoly::from_int(a, 0));
        g.add_edge(0, 2, None, LaurentPoly::from_int(b, 0));
        g.add_edge(2, 1, None, LaurentPoly::from_int(d, 0));
        g.add_edge(1, 2, None, LaurentPoly::from_int(c, 0));
        g
    }

    #[test]
    fn dihedral_automaton_not_positive() {
        for (a, b, c, d) in [(2, 1, 1, 1), (1, 2, 1, 1)] {
            let g = dihedral(a, b, c, d);
            let cert = multiplicative_basis_at(&g, 0);
            assert!(
                matches!(cert.verdict, PMVerdict::MultiplicativeNotPositive { .. }),
                "({},{},{},{}): {:?}",
                a,
                b,
                c,
                d,
                cert.verdict
            );
            // det M = a^2 c - b^2 d
            assert_eq!(cert.det, LaurentPoly::from_int(a * a * c - b * b * d, 0));
        }
    }

    #[test]
    fn dihedral_unit_weights_singular() {
        // With a = b = c = d = 1 the path matrix is singular.
        let g = dihedral(1, 1, 1, 1);
        let cert = multiplicative_basis_at(&g, 0);
        assert!(matches!(cert.verdict, PMVerdict::NotMultiplicative { .. }));
    }

    fn two_vertex_b0() -> WeightedDigraph {
        let mut g = WeightedDigraph::new(2, names(&["z1", "z2"]), names(&["e", "0"]));
        g.add_edge(0, 1, Some(0), LaurentPoly::one(2));
        g.add_edge(1, 0, Some(1), LaurentPoly::var(0, 2));
        g.add_edge(1, 0, Some(2), LaurentPoly::var(1, 2));
        g
    }

    #[test]
    fn two_vertex_b0_certificate() {
        let g = two_vertex_b0();
        let cert = multiplicative_basis_at(&g, 0);
        assert!(cert.is_positively_multiplicative());
        assert_eq!(cert.min_poly_degree(), 2);
        // mu = T^2 - (z1 + z2)
        let want = LaurentPoly::var(0, 2).add(&LaurentPoly::var(1, 2)).neg();
        assert!(cert.min_poly[0] == RationalFunction::from_poly(want));
        assert!(cert.min_poly[1].is_zero());
        // xi_{s0} * xi_{s0} = z1 * xi_e + z2 * xi_e
        let c = cert.structure_constant(1, 1, 0);
        let sum = LaurentPoly::var(0, 2).add(&LaurentPoly::var(1, 2));
        assert!(c == &RationalFunction::from_poly(sum));
    }

    #[test]
    fn expansion_of_two_vertex_graph() {
        // up-arrow weight 1, two monomial down-arrows z1 and z2
        let mut g = WeightedDigraph::new(2, names(&["z1", "z2"]), names(&["v1", "v2"]));
        g.add_edge(0, 1, None, LaurentPoly::one(2));
        g.add_edge(1, 0, None, LaurentPoly::var(0, 2));
        g.add_edge(1, 0, None, LaurentPoly::var(1, 2));
        let ex = expand(&g, 0, 7).unwrap();
        let sizes: Vec<usize> = ex.levels.iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 3, 3, 4]);
        // every edge goes one level down
        for e in &ex.graph.edges {
            assert_eq!(ex.vertex_data[e.dst].2, ex.vertex_data[e.src].2 + 1);
        }
        // expansion refuses polynomial weights
        let mut poly_g = WeightedDigraph::new(2, names(&["z1", "z2"]), names(&["a", "b"]));
        poly_g.add_edge(0, 1, None, LaurentPoly::one(2));
        poly_g.add_edge(1, 0, None, LaurentPoly::var(0, 2).add(&LaurentPoly::var(1, 2)));
        assert!(expand(&poly_g, 0, 3).is_err());
        assert!(expand(&poly_g.split_polynomial_weights(), 0, 3).is_ok());
        // depth 1 keeps only the root
        let tiny = expand(&g, 0, 1).unwrap();
        assert_eq!(tiny.levels, vec![vec![0]]);
    }

    #[test]
    fn isomorphism_identity_and_relabel() {
        let g = worked_example();
        let opts = IsoOptions { respect_types: true, respect_weights: true };
        let id = typed_isomorphic(&g, &g, opts).unwrap();
        assert_eq!(id, vec![0, 1, 2, 3, 4, 5]);
        // permuted copy
        let perm = [2usize, 0, 1, 4, 3, 5];
        let mut h = WeightedDigraph::new(
            3,
            g.var_names.clone(),
            {
                let mut labels = vec![String::new(); 6];
                for (v, &p) in perm.iter().enumerate() {
                    labels[p] = format!("w{}", v);
                }
                labels
            },
        );
        for e in &g.edges {
            h.add_edge(perm[e.src], perm[e.dst], e.etype, e.weight.clone());
        }
        let iso = typed_isomorphic(&g, &h, opts).unwrap();
        assert_eq!(iso, perm.to_vec());
        // breaking one weight kills weight-respecting isomorphism
        let mut h2 = h.clone();
        h2.edges[6].weight = LaurentPoly::var(1, 3);
        assert!(typed_isomorphic(&g, &h2, opts).is_none());
        assert!(typed_isomorphic(
            &g,
            &h2,
            IsoOptions { respect_types: true, respect_weights: false }
        )
        .is_some());
    }

    #[test]
    fn path_matrix_against_path_enumeration() {
        // brute-force path enumeration oracle on the worked example
        let g = worked_example();
        let n = g.vertex_count();
        let m = path_matrix_poly(&g, 0);
        for len in 0..n {
            let mut totals = vec![LaurentPoly::zero(3); n];
            let mut stack = vec![(0usize, LaurentPoly::one(3), 0usize)];
            while let Some((v, w, l)) = stack.pop() {
                if l == len {
                    totals[v].add_assign(&w);
                    continue;
                }
                for e in &g.edges {
                    if e.src == v {
                        stack.push((e.dst, w.mul(&e.weight), l + 1));
                    }
                }
            }
            for i in 0..n {
                assert_eq!(m[i][len], totals[i], "paths of length {} to {}", len, i);
            }
        }
    }
}
