//! Combinatorial models of the orbit graphs in classical types: window
//! notations for the affine Weyl groups of types A and C, colored-particle
//! graphs, and type-A key tableaux. Each model is built independently of the
//! Coxeter-theoretic graphs and serves as a cross-checking oracle.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::affine::{AffineContext, AffineElement};
use crate::cartan::{rat, AffineCartanData, CartanError, TypeLabel};
use crate::laurent::LaurentPoly;
use crate::pmgraph::WeightedDigraph;
use crate::weyl::WeylElement;

/// Window notation for affine type A rank n: the images of `1..=n+1` under a
/// permutation of the integers with `(i+n+1)s = (i)s + n+1` and fixed sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeAWindow {
    pub window: Vec<i64>,
}

impl TypeAWindow {
    pub fn identity(n: usize) -> Self {
        TypeAWindow { window: (1..=n as i64 + 1).collect() }
    }

    pub fn rank(&self) -> usize {
        self.window.len() - 1
    }

    /// Checks the defining invariants: fixed sum and complete residues.
    pub fn is_valid(&self) -> bool {
        let m = self.window.len() as i64;
        let sum: i64 = self.window.iter().sum();
        if sum != m * (m + 1) / 2 {
            return false;
        }
        let residues: BTreeSet<i64> = self.window.iter().map(|j| j.rem_euclid(m)).collect();
        residues.len() == self.window.len()
    }
}

/// Left multiplication `s_i * w` on type-A windows. The 0-action swaps the
/// first and last entries with shifts by `n+1`; middle entries are untouched.
pub fn window_a_apply(i: usize, win: &TypeAWindow) -> TypeAWindow {
    let n = win.rank();
    let m = n as i64 + 1;
    let mut w = win.window.clone();
    if i == 0 {
        let first = w[0];
        let last = w[n];
        w[0] = last - m;
        w[n] = first + m;
    } else {
        w.swap(i - 1, i);
    }
    TypeAWindow { window: w }
}

/// Window of an affine element through its reduced word.
pub fn window_a_of(ctx: &AffineContext, w: &AffineElement) -> TypeAWindow {
    let word = ctx.reduced_word(w);
    let mut win = TypeAWindow::identity(ctx.rank());
    for &i in word.iter().rev() {
        win = window_a_apply(i, &win);
    }
    win
}

/// Round trip: recover the `(finite, translation)` pair from a window.
pub fn window_a_to_element(
    data: &AffineCartanData,
    win: &TypeAWindow,
) -> Result<AffineElement, CartanError> {
    if data.type_label() != TypeLabel::A {
        return Err(CartanError(String::from("type-A windows need type-A data")));
    }
    let n = data.rank();
    let m = n as i64 + 1;
    if !win.is_valid() {
        return Err(CartanError(String::from("invalid type-A window")));
    }
    // j_k = r_k + m q_k with r_k in 1..=m; the finite part is the window r
    // and the translation has epsilon-coordinate q_k at position r_k.
    let mut r = vec![0i64; n + 1];
    let mut eps = vec![0i64; n + 1];
    for (k, &j) in win.window.iter().enumerate() {
        let rk = (j - 1).rem_euclid(m) + 1;
        let qk = (j - rk) / m;
        r[k] = rk;
        eps[rk as usize - 1] = qk;
    }
    // coroot coordinates are prefix sums of the epsilon vector
    let mut trans = Vec::with_capacity(n);
    let mut acc = 0i64;
    for e in eps.iter().take(n) {
        acc += e;
        trans.push(acc);
    }
    // left action on epsilon vectors: u(eps_k) = eps_{r^{-1}(k)}
    let mut r_inv = vec![0usize; n + 1];
    for (k, &rk) in r.iter().enumerate() {
        r_inv[rk as usize - 1] = k + 1;
    }
    let mut root_mat = vec![0i64; n * n];
    for j in 0..n {
        // u(alpha_{j+1}) = eps_{r_inv[j]} - eps_{r_inv[j+1]}
        let a = r_inv[j] as i64;
        let b = r_inv[j + 1] as i64;
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for k in lo..hi {
            root_mat[(k as usize - 1) * n + j] = sign;
        }
    }
    let finite = WeylElement::from_root_matrix(data, root_mat)?;
    Ok(AffineElement { finite, trans })
}

/// Window notation for affine type C rank n: images of `1..=n` under a
/// permutation of the integers with `(-i)s = -(i)s` and period `N = 2n+1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypeCWindow {
    pub window: Vec<i64>,
}

impl TypeCWindow {
    pub fn identity(n: usize) -> Self {
        TypeCWindow { window: (1..=n as i64).collect() }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.window.len() as i64;
        let big_n = 2 * n + 1;
        // distinct nonzero classes modulo N, no two paired by negation
        let mut seen = BTreeSet::new();
        for &j in &self.window {
            let r = j.rem_euclid(big_n);
            if r == 0 {
                return false;
            }
            let pair = core::cmp::min(r, big_n - r);
            if !seen.insert(pair) {
                return false;
            }
        }
        true
    }
}

/// Left multiplication `s_i * w` on type-C windows.
pub fn window_c_apply(i: usize, win: &TypeCWindow) -> TypeCWindow {
    let n = win.rank();
    let big_n = 2 * n as i64 + 1;
    let mut w = win.window.clone();
    if i == 0 {
        w[0] = -w[0];
    } else if i == n {
        w[n - 1] = big_n - w[n - 1];
    } else {
        w.swap(i - 1, i);
    }
    TypeCWindow { window: w }
}

pub fn window_c_of(ctx: &AffineContext, w: &AffineElement) -> TypeCWindow {
    let word = ctx.reduced_word(w);
    let mut win = TypeCWindow::identity(ctx.rank());
    for &i in word.iter().rev() {
        win = window_c_apply(i, &win);
    }
    win
}

pub fn window_c_to_element(
    data: &AffineCartanData,
    win: &TypeCWindow,
) -> Result<AffineElement, CartanError> {
    if data.type_label() != TypeLabel::C {
        return Err(CartanError(String::from("type-C windows need type-C data")));
    }
    let n = data.rank();
    let big_n = 2 * n as i64 + 1;
    if !win.is_valid() {
        return Err(CartanError(String::from("invalid type-C window")));
    }
    // j_k = r_k + N q_k with r_k in 1..=2n; r_k <= n keeps the sign, larger
    // values stand for -eps_{N - r_k}.
    let mut signed = vec![0i64; n];
    let mut eps = vec![0i64; n];
    for (k, &j) in win.window.iter().enumerate() {
        let rk = (j - 1).rem_euclid(big_n) + 1;
        let qk = (j - rk) / big_n;
        if rk <= n as i64 {
            signed[k] = rk;
            eps[rk as usize - 1] = qk;
        } else {
            let m = big_n - rk;
            signed[k] = -m;
            eps[m as usize - 1] = -qk;
        }
    }
    // coroot coordinates: c_k = eps_1 + ... + eps_k
    let mut trans = Vec::with_capacity(n);
    let mut acc = 0i64;
    for e in &eps {
        acc += e;
        trans.push(acc);
    }
    // left action: u(eps_k) = signed-inverse of the window permutation at k
    let mut inv = vec![0i64; n];
    for (k, &s) in signed.iter().enumerate() {
        if s > 0 {
            inv[s as usize - 1] = k as i64 + 1;
        } else {
            inv[(-s) as usize - 1] = -(k as i64 + 1);
        }
    }
    let mut root_mat = vec![0i64; n * n];
    for j in 0..n {
        let mut v = vec![0i64; n];
        if j + 1 < n {
            add_signed_eps(&mut v, inv[j], 1);
            add_signed_eps(&mut v, inv[j + 1], -1);
        } else {
            add_signed_eps(&mut v, inv[n - 1], 2);
        }
        let coords = c_eps_to_root_coords(&v)?;
        for (k, &c) in coords.iter().enumerate() {
            root_mat[k * n + j] = c;
        }
    }
    let finite = WeylElement::from_root_matrix(data, root_mat)?;
    Ok(AffineElement { finite, trans })
}

fn add_signed_eps(v: &mut [i64], signed_index: i64, coef: i64) {
    if signed_index > 0 {
        v[signed_index as usize - 1] += coef;
    } else {
        v[(-signed_index) as usize - 1] -= coef;
    }
}

/// Type-C epsilon coordinates to simple-root coordinates.
fn c_eps_to_root_coords(v: &[i64]) -> Result<Vec<i64>, CartanError> {
    let n = v.len();
    // v = sum y_i alpha_i with alpha_i = eps_i - eps_{i+1}, alpha_n = 2 eps_n:
    // y_k = v_1 + ... + v_k for k < n, y_n = (v_n + y_{n-1}) / 2.
    let mut y = vec![0i64; n];
    let mut acc = 0i64;
    for k in 0..n - 1 {
        acc += v[k];
        y[k] = acc;
    }
    let last = v[n - 1] + if n >= 2 { y[n - 2] } else { 0 };
    if last % 2 != 0 {
        return Err(CartanError(String::from("vector is not in the type-C root lattice")));
    }
    y[n - 1] = last / 2;
    Ok(y)
}

/// Block data of a parabolic subgroup acting on the letter range: sorted
/// orbits, folded colors and the optional self-dual middle block.
#[derive(Debug, Clone)]
pub struct ColorModel {
    pub blocks: Vec<Vec<usize>>,
    pub colors: usize,
    pub self_dual: Option<usize>,
}

impl ColorModel {
    fn color_of_block(&self, b: usize) -> usize {
        core::cmp::min(b, self.blocks.len() - 1 - b)
    }

    fn letter_text(&self, b: usize, type_c: bool) -> String {
        let c = self.color_of_block(b) + 1;
        if !type_c {
            return format!("{}", b + 1);
        }
        if Some(b) == self.self_dual {
            format!("{}", c)
        } else if b < self.blocks.len() / 2 {
            format!("{}-", c)
        } else {
            format!("{}+", c)
        }
    }
}

fn orbit_blocks(gens: &[Vec<usize>], range: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; range];
    let mut blocks = Vec::new();
    for start in 0..range {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    frontier.push(y);
                }
            }
        }
        orbit.sort_unstable();
        blocks.push(orbit);
    }
    blocks.sort();
    blocks
}

fn blocks_type_a(n: usize, j_set: &[usize]) -> ColorModel {
    let mut gens = Vec::new();
    for &j in j_set {
        let mut p: Vec<usize> = (0..n + 1).collect();
        p.swap(j - 1, j);
        gens.push(p);
    }
    let blocks = orbit_blocks(&gens, n + 1);
    let colors = blocks.len();
    ColorModel { blocks, colors, self_dual: None }
}

fn blocks_type_c(n: usize, j_set: &[usize]) -> ColorModel {
    let range = 2 * n;
    let s_c = |i: usize| range - 1 - i;
    let mut gens = Vec::new();
    for &j in j_set {
        let mut p: Vec<usize> = (0..range).collect();
        if j < n {
            p.swap(j - 1, j);
            p.swap(s_c(j), s_c(j - 1));
        } else {
            p.swap(n - 1, n);
        }
        gens.push(p);
    }
    let blocks = orbit_blocks(&gens, range);
    let k = blocks.len();
    let self_dual = if k % 2 == 1 { Some(k / 2) } else { None };
    ColorModel { blocks, colors: k.div_ceil(2), self_dual }
}

fn multiset_words(mults: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = mults.iter().sum();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(total);
    let mut remaining = mults.to_vec();
    fn rec(
        word: &mut Vec<usize>,
        remaining: &mut Vec<usize>,
        total: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if word.len() == total {
            out.push(word.clone());
            return;
        }
        for b in 0..remaining.len() {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                word.push(b);
                rec(word, remaining, total, out);
                word.pop();
                remaining[b] += 1;
            }
        }
    }
    rec(&mut word, &mut remaining, total, &mut out);
    out
}

/// The colored-particle graph for types A and C: an independent combinatorial
/// realization of the parabolic orbit graph, with matching types and weights.
pub fn build_particle_graph(
    data: &AffineCartanData,
    jprime: &[usize],
) -> Result<WeightedDigraph, CartanError> {
    match data.type_label() {
        TypeLabel::A => build_particle_graph_a(data, jprime),
        TypeLabel::C => build_particle_graph_c(data, jprime),
        other => Err(CartanError(format!(
            "particle models are defined for types A and C, not {}",
            other.as_str()
        ))),
    }
}

fn sorted_jprime(jprime: &[usize], n: usize) -> Result<Vec<usize>, CartanError> {
    let mut jp = jprime.to_vec();
    jp.sort_unstable();
    jp.dedup();
    if jp.is_empty() || jp.iter().any(|&j| j < 1 || j > n) {
        return Err(CartanError(String::from(
            "the support J' must be a nonempty subset of the finite nodes",
        )));
    }
    Ok(jp)
}

fn build_particle_graph_a(
    data: &AffineCartanData,
    jprime: &[usize],
) -> Result<WeightedDigraph, CartanError> {
    let n = data.rank();
    let jp = sorted_jprime(jprime, n)?;
    let j_set: Vec<usize> = (1..=n).filter(|j| !jp.contains(j)).collect();
    let model = blocks_type_a(n, &j_set);
    let mults: Vec<usize> = model.blocks.iter().map(|b| b.len()).collect();
    let words = multiset_words(&mults);
    let labels: Vec<String> = words
        .iter()
        .map(|w| {
            w.iter()
                .map(|&b| model.letter_text(b, false))
                .collect::<Vec<_>>()
                .join("")
        })
        .collect();
    let index: BTreeMap<&Vec<usize>, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let names: Vec<String> = jp.iter().map(|j| format!("z{}", j)).collect();
    let mut graph = WeightedDigraph::new(jp.len(), names, labels);
    for (src, word) in words.iter().enumerate() {
        for i in 1..=n {
            if word[i - 1] < word[i] {
                let mut w2 = word.clone();
                w2.swap(i - 1, i);
                let dst = index[&w2];
                graph.add_edge(src, dst, Some(i), LaurentPoly::from_int(data.marks()[i], jp.len()));
            }
        }
        if word[n] < word[0] {
            let mut w2 = word.clone();
            w2.swap(0, n);
            let dst = index[&w2];
            // one inverse variable per block boundary crossed by the wrap
            let mut exps = vec![0i64; jp.len()];
            for c in word[n]..word[0] {
                let boundary = model.blocks[c].iter().max().unwrap() + 1;
                let pos = jp
                    .iter()
                    .position(|&j| j == boundary)
                    .expect("block boundary lies in J'");
                exps[pos] -= 1;
            }
            graph.add_edge(src, dst, Some(0), LaurentPoly::monomial(rat(data.marks()[0]), exps));
        }
    }
    Ok(graph)
}

fn build_particle_graph_c(
    data: &AffineCartanData,
    jprime: &[usize],
) -> Result<WeightedDigraph, CartanError> {
    let n = data.rank();
    let jp = sorted_jprime(jprime, n)?;
    let j_set: Vec<usize> = (1..=n).filter(|j| !jp.contains(j)).collect();
    let model = blocks_type_c(n, &j_set);
    let k = model.blocks.len();
    // multiplicity of each color = size of its low block within 1..n
    let mut color_mults = vec![0usize; model.colors];
    for (b, block) in model.blocks.iter().enumerate() {
        if b <= (k - 1) / 2 {
            color_mults[model.color_of_block(b)] = block.iter().filter(|&&x| x < n).count();
        }
    }
    let color_words = multiset_words(&color_mults);
    let mut words: Vec<Vec<usize>> = Vec::new();
    for cw in &color_words {
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
        while let Some((pos, acc)) = stack.pop() {
            if pos == cw.len() {
                words.push(acc);
                continue;
            }
            let c = cw[pos];
            if model.self_dual == Some(c) {
                let mut a = acc.clone();
                a.push(c);
                stack.push((pos + 1, a));
            } else {
                for b in [c, k - 1 - c] {
                    let mut a = acc.clone();
                    a.push(b);
                    stack.push((pos + 1, a));
                }
            }
        }
    }
    words.sort();
    words.dedup();
    let labels: Vec<String> = words
        .iter()
        .map(|w| {
            w.iter()
                .map(|&b| model.letter_text(b, true))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let index: BTreeMap<&Vec<usize>, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let names: Vec<String> = jp.iter().map(|j| format!("z{}", j)).collect();
    let mut graph = WeightedDigraph::new(jp.len(), names, labels);
    let class_of_eps = |m: usize| -> Vec<i64> {
        // eps_m = alpha_m^vee + ... + alpha_n^vee, reduced modulo Q_J^vee
        let mut exps = vec![0i64; jp.len()];
        for (pos, &j) in jp.iter().enumerate() {
            if j >= m {
                exps[pos] = 1;
            }
        }
        exps
    };
    for (src, word) in words.iter().enumerate() {
        for i in 1..n {
            if word[i - 1] < word[i] {
                let mut w2 = word.clone();
                w2.swap(i - 1, i);
                let dst = index[&w2];
                graph.add_edge(src, dst, Some(i), LaurentPoly::from_int(data.marks()[i], jp.len()));
            }
        }
        // type n: last letter flips spin from minus to plus
        let last = word[n - 1];
        if last < k - 1 - last {
            let mut w2 = word.clone();
            w2[n - 1] = k - 1 - last;
            let dst = index[&w2];
            graph.add_edge(src, dst, Some(n), LaurentPoly::from_int(data.marks()[n], jp.len()));
        }
        // type 0: first letter flips spin from plus to minus
        let first = word[0];
        if first > k - 1 - first {
            let mut w2 = word.clone();
            w2[0] = k - 1 - first;
            let dst = index[&w2];
            let m = model.blocks[k - 1 - first]
                .iter()
                .filter(|&&x| x < n)
                .min()
                .map(|&x| x + 1)
                .expect("paired block meets 1..n");
            let mut exps = class_of_eps(m);
            for e in exps.iter_mut() {
                *e = -*e;
            }
            graph.add_edge(src, dst, Some(0), LaurentPoly::monomial(rat(data.marks()[0]), exps));
        }
    }
    Ok(graph)
}

/// A type-A key tableau: columns with strictly increasing entries whose sets
/// are nested right-to-left.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KeyTableau {
    pub columns: Vec<Vec<i64>>,
}

impl KeyTableau {
    /// The highest tableau of the shape attached to `J'`: one column of
    /// length `j` for each `j` in `J'`, filled with `1..=j`.
    pub fn highest(jprime: &[usize]) -> Self {
        let mut lengths: Vec<usize> = jprime.to_vec();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        KeyTableau {
            columns: lengths.iter().map(|&l| (1..=l as i64).collect()).collect(),
        }
    }

    pub fn is_key(&self) -> bool {
        for col in &self.columns {
            if col.windows(2).any(|p| p[0] >= p[1]) {
                return false;
            }
        }
        for w in self.columns.windows(2) {
            let left: BTreeSet<i64> = w[0].iter().copied().collect();
            if !w[1].iter().all(|x| left.contains(x)) {
                return false;
            }
        }
        true
    }

    /// Content vector: multiplicity of each entry `1..=n+1`.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0usize; n + 1];
        for col in &self.columns {
            for &x in col {
                c[x as usize - 1] += 1;
            }
        }
        c
    }

    pub fn label(&self) -> String {
        self.columns
            .iter()
            .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("."))
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// The affine Weyl group action on key tableaux in rank `n` (entries
/// `1..=n+1`); each generator is an involution.
pub fn key_action(n: usize, tableau: &KeyTableau, i: usize) -> KeyTableau {
    let (a, b) = if i == 0 {
        (n as i64 + 1, 1)
    } else {
        (i as i64, i as i64 + 1)
    };
    let mut columns = Vec::with_capacity(tableau.columns.len());
    for col in &tableau.columns {
        let has_a = col.contains(&a);
        let has_b = col.contains(&b);
        let mut new_col = col.clone();
        if has_a && !has_b {
            for x in new_col.iter_mut() {
                if *x == a {
                    *x = b;
                }
            }
        } else if has_b && !has_a {
            for x in new_col.iter_mut() {
                if *x == b {
                    *x = a;
                }
            }
        }
        new_col.sort_unstable();
        columns.push(new_col);
    }
    let out = KeyTableau { columns };
    assert!(out.is_key(), "key condition must be preserved");
    out
}

/// The directed typed orbit graph of the highest key tableau. Arrows follow
/// the dominance order on contents: finite arrows lower the weight, 0-arrows
/// raise it.
pub fn key_orbit_graph(
    data: &AffineCartanData,
    jprime: &[usize],
) -> Result<WeightedDigraph, CartanError> {
    if data.type_label() != TypeLabel::A {
        return Err(CartanError(String::from("key tableaux are a type-A model")));
    }
    let n = data.rank();
    let jp = sorted_jprime(jprime, n)?;
    let start = KeyTableau::highest(&jp);
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(t) = frontier.pop() {
        for i in 0..=n {
            let t2 = key_action(n, &t, i);
            if t2 != t && seen.insert(t2.clone()) {
                frontier.push(t2);
            }
        }
    }
    let tableaux: Vec<KeyTableau> = seen.into_iter().collect();
    let index: BTreeMap<&KeyTableau, usize> =
        tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let labels: Vec<String> = tableaux.iter().map(|t| t.label()).collect();
    let mut graph = WeightedDigraph::new(0, vec![], labels);
    for (src, t) in tableaux.iter().enumerate() {
        for i in 0..=n {
            let t2 = key_action(n, t, i);
            if t2 == *t {
                continue;
            }
            // direction: i in I* lowers the content (i -> i+1 substitutions),
            // i = 0 raises it (n+1 -> 1 substitutions)
            let c1 = t.content(n);
            let c2 = t2.content(n);
            let downward = if i == 0 { c2[0] > c1[0] } else { c2[i] > c1[i] };
            if downward {
                let dst = index[&t2];
                graph.add_edge(src, dst, Some(i), LaurentPoly::one(0));
            }
        }
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_affine_data;
    use crate::gamma;
    use crate::pmgraph::{typed_isomorphic, IsoOptions};

    #[test]
    fn window_a_generators() {
        // s_0 = [0, 2, ..., n, n+2]
        let w = window_a_apply(0, &TypeAWindow::identity(2));
        assert_eq!(w.window, vec![0, 2, 4]);
        assert_eq!(TypeAWindow::identity(3).window, vec![1, 2, 3, 4]);
        // t_{alpha_1} at n = 2: [4, -1, 3]
        let d = build_affine_data(TypeLabel::A, 2).unwrap();
        let ctx = AffineContext::new(&d);
        let t = AffineElement { finite: WeylElement::identity(&d), trans: vec![1, 0] };
        assert_eq!(window_a_of(&ctx, &t).window, vec![4, -1, 3]);
    }

    #[test]
    fn window_a_round_trip_and_homomorphism() {
        let d = build_affine_data(TypeLabel::A, 3).unwrap();
        let ctx = AffineContext::new(&d);
        for w in ctx.ball(5) {
            let win = window_a_of(&ctx, &w);
            assert!(win.is_valid());
            assert_eq!(window_a_to_element(&d, &win).unwrap(), w);
            for i in 0..=3 {
                let lhs = window_a_of(&ctx, &ctx.left_mul_gen(i, &w));
                let rhs = window_a_apply(i, &win);
                assert_eq!(lhs, rhs);
            }
            let m = 4i64;
            assert_eq!(win.window.iter().sum::<i64>(), m * (m + 1) / 2);
        }
    }

    #[test]
    fn window_c_generators_and_examples() {
        let d = build_affine_data(TypeLabel::C, 3).unwrap();
        let ctx = AffineContext::new(&d);
        // s_0 = [-1, 2, 3], s_3 = [1, 2, 4]
        assert_eq!(window_c_of(&ctx, ctx.generator(0)).window, vec![-1, 2, 3]);
        assert_eq!(window_c_of(&ctx, ctx.generator(3)).window, vec![1, 2, 4]);
        // s_2 s_1 s_3 s_2 s_3 = [4, 5, 1]
        let w = [2usize, 1, 3, 2, 3]
            .iter()
            .rev()
            .fold(ctx.identity(), |acc, &i| ctx.left_mul_gen(i, &acc));
        assert_eq!(window_c_of(&ctx, &w).window, vec![4, 5, 1]);
    }

    #[test]
    fn window_c_round_trip_and_homomorphism() {
        let d = build_affine_data(TypeLabel::C, 2).unwrap();
        let ctx = AffineContext::new(&d);
        for w in ctx.ball(5) {
            let win = window_c_of(&ctx, &w);
            assert!(win.is_valid());
            assert_eq!(window_c_to_element(&d, &win).unwrap(), w);
            for i in 0..=2 {
                let lhs = window_c_of(&ctx, &ctx.left_mul_gen(i, &w));
                let rhs = window_c_apply(i, &win);
                assert_eq!(lhs, rhs, "letter {}", i);
            }
        }
    }

    #[test]
    fn particle_graph_matches_gamma_a3() {
        let d = build_affine_data(TypeLabel::A, 3).unwrap();
        let opts = IsoOptions { respect_types: true, respect_weights: true };
        for jp in [vec![1usize], vec![2], vec![3], vec![1, 2]] {
            let particle = build_particle_graph(&d, &jp).unwrap();
            let gamma_graph = gamma::build_gamma_gamma(&d, &jp).unwrap();
            assert!(
                typed_isomorphic(&particle, &gamma_graph.graph, opts).is_some(),
                "J' = {:?}",
                jp
            );
        }
    }

    #[test]
    fn particle_graph_a3_omega12_zero_arrows() {
        // five 0-arrows: two 1/(z1 z2), two 1/z2, one 1/z1 (as in the figure)
        let d = build_affine_data(TypeLabel::A, 3).unwrap();
        let g = build_particle_graph(&d, &[1, 2]).unwrap();
        assert_eq!(g.vertex_count(), 12);
        let mut weights: Vec<String> = g
            .edges
            .iter()
            .filter(|e| e.etype == Some(0))
            .map(|e| e.weight.to_text(&g.var_names))
            .collect();
        weights.sort();
        assert_eq!(
            weights,
            vec!["z1^-1", "z1^-1*z2^-1", "z1^-1*z2^-1", "z2^-1", "z2^-1"]
        );
    }

    #[test]
    fn particle_graph_matches_gamma_c3() {
        let d = build_affine_data(TypeLabel::C, 3).unwrap();
        let opts = IsoOptions { respect_types: true, respect_weights: true };
        for jp in [vec![2usize], vec![3]] {
            let particle = build_particle_graph(&d, &jp).unwrap();
            let gamma_graph = gamma::build_gamma_gamma(&d, &jp).unwrap();
            assert_eq!(particle.vertex_count(), gamma_graph.graph.vertex_count());
            assert!(
                typed_isomorphic(&particle, &gamma_graph.graph, opts).is_some(),
                "J' = {:?}",
                jp
            );
        }
        // omega_2: 12 vertices, all 0-arrows weighted z^{-eps_2} = 1/z2
        let g = build_particle_graph(&d, &[2]).unwrap();
        assert_eq!(g.vertex_count(), 12);
        for e in g.edges.iter().filter(|e| e.etype == Some(0)) {
            assert_eq!(e.weight.to_text(&g.var_names), "z2^-1");
        }
        // omega_3: 8 vertices, 4 zero-arrows
        let g3 = build_particle_graph(&d, &[3]).unwrap();
        assert_eq!(g3.vertex_count(), 8);
        assert_eq!(g3.edges.iter().filter(|e| e.etype == Some(0)).count(), 4);
    }

    #[test]
    fn particle_graph_rejects_type_b() {
        let d = build_affine_data(TypeLabel::B, 3).unwrap();
        assert!(build_particle_graph(&d, &[1]).is_err());
    }

    #[test]
    fn key_action_chain() {
        // the worked chain for gamma = omega_1 + omega_3 with entries 1..4
        let t0 = KeyTableau::highest(&[1, 3]);
        assert_eq!(t0.columns, vec![vec![1, 2, 3], vec![1]]);
        let n = 3;
        let t1 = key_action(n, &t0, 1);
        assert_eq!(t1.columns, vec![vec![1, 2, 3], vec![2]]);
        let t2 = key_action(n, &t1, 3);
        assert_eq!(t2.columns, vec![vec![1, 2, 4], vec![2]]);
        let t3 = key_action(n, &t2, 2);
        assert_eq!(t3.columns, vec![vec![1, 3, 4], vec![3]]);
        let t4 = key_action(n, &t3, 1);
        assert_eq!(t4.columns, vec![vec![2, 3, 4], vec![3]]);
        let t5 = key_action(n, &t4, 0);
        assert_eq!(t5.columns, vec![vec![1, 2, 3], vec![3]]);
        // involutions
        for (t, i) in [(&t0, 1usize), (&t2, 2), (&t4, 0)] {
            assert_eq!(key_action(n, &key_action(n, t, i), i), *t);
        }
    }

    #[test]
    fn key_orbit_matches_gamma_a3() {
        let d = build_affine_data(TypeLabel::A, 3).unwrap();
        let orbit = key_orbit_graph(&d, &[1, 2]).unwrap();
        assert_eq!(orbit.vertex_count(), 12);
        let gamma_graph = gamma::build_gamma_gamma(&d, &[1, 2]).unwrap();
        let iso = typed_isomorphic(
            &orbit,
            &gamma_graph.graph,
            IsoOptions { respect_types: true, respect_weights: false },
        );
        assert!(iso.is_some());
    }

    #[test]
    fn color_word_fibers() {
        // the particle graph has one vertex per W_J coset: |W|/|W_J| words
        let d = build_affine_data(TypeLabel::A, 3).unwrap();
        for jp in [vec![1usize], vec![2], vec![1, 3]] {
            let particle = build_particle_graph(&d, &jp).unwrap();
            let j_set: Vec<usize> = (1..=3).filter(|j| !jp.contains(j)).collect();
            let reps = crate::weyl::enumerate_wj(&d, &j_set);
            assert_eq!(particle.vertex_count(), reps.len());
        }
    }
}
