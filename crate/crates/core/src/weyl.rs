//! The finite Weyl group: elements as integer action matrices, lengths,
//! reduced words and parabolic quotients.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartan::{AffineCartanData, CartanError, GeoWeight, Rat, RootVector};

/// A finite Weyl group element, stored as the left-action matrices on
/// simple-root and simple-coroot coordinates together with their inverses.
///
/// Equality, ordering and hashing only look at the root-coordinate matrix.
#[derive(Debug, Clone)]
pub struct WeylElement {
    n: usize,
    /// Column j is the image of alpha_{j+1} in simple-root coordinates.
    root_mat: Vec<i64>,
    coroot_mat: Vec<i64>,
    inv_root_mat: Vec<i64>,
    inv_coroot_mat: Vec<i64>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.root_mat == other.root_mat
    }
}
impl Eq for WeylElement {}
impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.root_mat.cmp(&other.root_mat)
    }
}
impl core::hash::Hash for WeylElement {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.root_mat.hash(state);
    }
}

fn identity_mat(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik != 0 {
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j];
                }
            }
        }
    }
    out
}

fn mat_vec(n: usize, m: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum())
        .collect()
}

impl WeylElement {
    pub fn identity(data: &AffineCartanData) -> Self {
        let n = data.rank();
        WeylElement {
            n,
            root_mat: identity_mat(n),
            coroot_mat: identity_mat(n),
            inv_root_mat: identity_mat(n),
            inv_coroot_mat: identity_mat(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.root_mat == identity_mat(self.n)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// The reflection attached to any root `beta` (not necessarily simple).
    pub fn reflection(data: &AffineCartanData, beta: &RootVector) -> Result<Self, CartanError> {
        let n = data.rank();
        let beta_coroot = data.coroot(beta)?;
        // s_beta(alpha_j) = alpha_j - <alpha_j, beta^vee> beta
        let mut root_mat = vec![0i64; n * n];
        let mut coroot_mat = vec![0i64; n * n];
        for j in 0..n {
            let pair_root: i64 = (0..n)
                .map(|k| beta_coroot.coords[k] * data.finite_cartan()[k][j])
                .sum();
            let pair_coroot: i64 = (0..n)
                .map(|k| data.finite_cartan()[j][k] * beta.coords[k])
                .sum();
            for i in 0..n {
                let e = if i == j { 1 } else { 0 };
                root_mat[i * n + j] = e - pair_root * beta.coords[i];
                coroot_mat[i * n + j] = e - pair_coroot * beta_coroot.coords[i];
            }
        }
        // Reflections are involutions.
        Ok(WeylElement {
            n,
            inv_root_mat: root_mat.clone(),
            inv_coroot_mat: coroot_mat.clone(),
            root_mat,
            coroot_mat,
        })
    }

    /// Builds an element from the images of the simple roots (columns, in
    /// simple-root coordinates). The coroot action and the inverses are
    /// derived; fails if the matrix is not invertible over the integers or
    /// does not act integrally on coroots.
    pub fn from_root_matrix(
        data: &AffineCartanData,
        root_mat: Vec<i64>,
    ) -> Result<Self, CartanError> {
        let n = data.rank();
        assert_eq!(root_mat.len(), n * n);
        let d: Vec<Rat> = (0..n).map(|i| data.half_norm(i)).collect();
        let to_int = |m: &[Rat]| -> Result<Vec<i64>, CartanError> {
            use num_traits::ToPrimitive;
            m.iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer().to_i64().expect("matrix entry fits i64"))
                    } else {
                        Err(CartanError(String::from("matrix does not act integrally")))
                    }
                })
                .collect()
        };
        // coroot action: M_co = diag(d) M diag(1/d)
        let coroot_rat: Vec<Rat> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                &d[i] * crate::cartan::rat(root_mat[idx]) / &d[j]
            })
            .collect();
        let coroot_mat = to_int(&coroot_rat)?;
        let inv_root_mat = to_int(&invert_rat(n, &root_mat)?)?;
        let inv_coroot_mat = to_int(&invert_rat(n, &coroot_mat)?)?;
        Ok(WeylElement { n, root_mat, coroot_mat, inv_root_mat, inv_coroot_mat })
    }

    pub fn apply_root(&self, v: &RootVector) -> RootVector {
        let coords = if v.is_coroot {
            mat_vec(self.n, &self.coroot_mat, &v.coords)
        } else {
            mat_vec(self.n, &self.root_mat, &v.coords)
        };
        RootVector { coords, is_coroot: v.is_coroot }
    }

    pub fn apply_coroot_coords(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(self.n, &self.coroot_mat, v)
    }

    pub fn apply_inv_coroot_coords(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(self.n, &self.inv_coroot_mat, v)
    }

    /// `w(x)` for a point in fundamental-coweight coordinates.
    pub fn apply_geo(&self, x: &GeoWeight) -> GeoWeight {
        // (w(x), alpha_j) = (x, w^{-1}(alpha_j))
        let n = self.n;
        let coords = (0..n)
            .map(|j| {
                let mut acc = Rat::from_integer(0.into());
                for k in 0..n {
                    acc += crate::cartan::rat(self.inv_root_mat[k * n + j]) * &x.coords[k];
                }
                acc
            })
            .collect();
        GeoWeight { coords }
    }

    /// `w^{-1}(x)` on scaled integer coweight coordinates.
    pub fn apply_inv_geo_scaled(&self, x: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).map(|k| self.root_mat[k * n + j] * x[k]).sum())
            .collect()
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            n: self.n,
            root_mat: self.inv_root_mat.clone(),
            coroot_mat: self.inv_coroot_mat.clone(),
            inv_root_mat: self.root_mat.clone(),
            inv_coroot_mat: self.coroot_mat.clone(),
        }
    }

    /// Column `j` of the root matrix is nonpositive, i.e. `w(alpha_{j+1})` is
    /// a negative root. This is the right-descent test.
    pub fn sends_simple_negative(&self, j: usize) -> bool {
        (0..self.n).all(|i| self.root_mat[i * self.n + j] <= 0)
    }

    /// Left-descent test: `l(s_{i+1} w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        // l(s_i w) < l(w) iff w^{-1}(alpha_i) < 0.
        (0..self.n).all(|k| self.inv_root_mat[k * self.n + i] <= 0)
    }
}

fn invert_rat(n: usize, m: &[i64]) -> Result<Vec<Rat>, CartanError> {
    use num_traits::{One, Zero};
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| crate::cartan::rat(m[i * n + j])).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !a[r][k].is_zero())
            .ok_or_else(|| CartanError(String::from("singular action matrix")))?;
        a.swap(k, pivot);
        inv.swap(k, pivot);
        let dv = a[k][k].clone();
        for c in 0..n {
            a[k][c] /= dv.clone();
            inv[k][c] /= dv.clone();
        }
        for r in 0..n {
            if r != k && !a[r][k].is_zero() {
                let f = a[r][k].clone();
                for c in 0..n {
                    let t = &a[k][c] * &f;
                    a[r][c] -= t;
                    let t = &inv[k][c] * &f;
                    inv[r][c] -= t;
                }
            }
        }
    }
    Ok(inv.into_iter().flatten().collect())
}

/// The simple reflection `s_i` for `1 <= i <= n`.
pub fn simple_reflection(data: &AffineCartanData, i: usize) -> Result<WeylElement, CartanError> {
    let n = data.rank();
    if i < 1 || i > n {
        return Err(CartanError(String::from("simple reflection index out of range")));
    }
    WeylElement::reflection(data, &RootVector::simple(i - 1, n))
}

pub fn multiply(u: &WeylElement, v: &WeylElement) -> WeylElement {
    let n = u.n;
    assert_eq!(n, v.n, "rank mismatch");
    WeylElement {
        n,
        root_mat: mat_mul(n, &u.root_mat, &v.root_mat),
        coroot_mat: mat_mul(n, &u.coroot_mat, &v.coroot_mat),
        inv_root_mat: mat_mul(n, &v.inv_root_mat, &u.inv_root_mat),
        inv_coroot_mat: mat_mul(n, &v.inv_coroot_mat, &u.inv_coroot_mat),
    }
}

/// Coxeter length, as the number of inversions.
pub fn length(data: &AffineCartanData, u: &WeylElement) -> usize {
    data.positive_roots()
        .iter()
        .filter(|alpha| !u.apply_root(alpha).is_positive())
        .count()
}

/// The lexicographically smallest reduced word, by greedy left descents.
pub fn reduced_word(data: &AffineCartanData, u: &WeylElement) -> Vec<usize> {
    let mut w = u.clone();
    let mut word = Vec::new();
    while !w.is_identity() {
        let i = (0..data.rank())
            .find(|&i| w.has_left_descent(i))
            .expect("non-identity element has a descent");
        word.push(i + 1);
        w = multiply(&simple_reflection(data, i + 1).unwrap(), &w);
    }
    word
}

/// All of `W`, ordered by length then lexicographic reduced word.
pub fn enumerate_group(data: &AffineCartanData) -> Vec<WeylElement> {
    let gens: Vec<WeylElement> = (1..=data.rank())
        .map(|i| simple_reflection(data, i).unwrap())
        .collect();
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = Vec::new();
    let id = WeylElement::identity(data);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        out.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for w in &frontier {
            for s in &gens {
                let v = multiply(s, w);
                if !seen.contains(&v) {
                    seen.insert(v.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    out.sort_by(|a, b| {
        let (la, lb) = (length(data, a), length(data, b));
        la.cmp(&lb).then_with(|| reduced_word(data, a).cmp(&reduced_word(data, b)))
    });
    out
}

/// Minimal-length representative of the left coset `u W_J` (`J` is 1-indexed).
pub fn min_coset_rep(data: &AffineCartanData, u: &WeylElement, j_set: &[usize]) -> WeylElement {
    let mut w = u.clone();
    loop {
        let mut descended = false;
        for &j in j_set {
            if w.sends_simple_negative(j - 1) {
                w = multiply(&w, &simple_reflection(data, j).unwrap());
                descended = true;
                break;
            }
        }
        if !descended {
            return w;
        }
    }
}

/// The minimal coset representatives `W^J`, in (length, word) order.
pub fn enumerate_wj(data: &AffineCartanData, j_set: &[usize]) -> Vec<WeylElement> {
    enumerate_group(data)
        .into_iter()
        .filter(|w| j_set.iter().all(|&j| !w.sends_simple_negative(j - 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_affine_data, TypeLabel};

    fn a2() -> AffineCartanData {
        build_affine_data(TypeLabel::A, 2).unwrap()
    }

    fn g2() -> AffineCartanData {
        build_affine_data(TypeLabel::G2, 2).unwrap()
    }

    #[test]
    fn simple_reflection_action() {
        let d = a2();
        let s1 = simple_reflection(&d, 1).unwrap();
        assert_eq!(s1.apply_root(&RootVector::simple(0, 2)).coords, vec![-1, 0]);
        assert_eq!(s1.apply_root(&RootVector::simple(1, 2)).coords, vec![1, 1]);
        assert!(multiply(&s1, &s1).is_identity());
    }

    #[test]
    fn braid_relation_a2() {
        let d = a2();
        let s1 = simple_reflection(&d, 1).unwrap();
        let s2 = simple_reflection(&d, 2).unwrap();
        let lhs = multiply(&s1, &multiply(&s2, &s1));
        let rhs = multiply(&s2, &multiply(&s1, &s2));
        assert_eq!(lhs, rhs);
        assert_eq!(length(&d, &lhs), 3);
    }

    #[test]
    fn coxeter_element_order_g2() {
        let d = g2();
        let c = multiply(
            &simple_reflection(&d, 1).unwrap(),
            &simple_reflection(&d, 2).unwrap(),
        );
        let mut p = WeylElement::identity(&d);
        for _ in 0..6 {
            p = multiply(&c, &p);
        }
        assert!(p.is_identity());
        let mut q = WeylElement::identity(&d);
        for _ in 0..3 {
            q = multiply(&c, &q);
        }
        assert!(!q.is_identity());
    }

    #[test]
    fn group_sizes() {
        assert_eq!(enumerate_group(&a2()).len(), 6);
        assert_eq!(enumerate_group(&g2()).len(), 12);
        let c3 = build_affine_data(TypeLabel::C, 3).unwrap();
        assert_eq!(enumerate_group(&c3).len(), 48);
    }

    #[test]
    fn longest_element_g2() {
        let d = g2();
        let max = enumerate_group(&d)
            .iter()
            .map(|w| length(&d, w))
            .max()
            .unwrap();
        assert_eq!(max, 6);
    }

    #[test]
    fn word_roundtrip() {
        let d = g2();
        for w in enumerate_group(&d) {
            let word = reduced_word(&d, &w);
            assert_eq!(word.len(), length(&d, &w));
            let mut prod = WeylElement::identity(&d);
            for &i in word.iter().rev() {
                prod = multiply(&simple_reflection(&d, i).unwrap(), &prod);
            }
            assert_eq!(prod, w);
        }
    }

    #[test]
    fn length_subadditive_exhaustive() {
        for d in [a2(), g2()] {
            let all = enumerate_group(&d);
            for u in &all {
                for v in &all {
                    let lu = length(&d, u);
                    let lv = length(&d, v);
                    let luv = length(&d, &multiply(u, v));
                    assert!(luv <= lu + lv);
                    assert_eq!((lu + lv) % 2, luv % 2);
                }
            }
        }
    }

    #[test]
    fn coset_factorization() {
        // Unique factorization x = x^J x_J with additive lengths.
        for (t, n) in [(TypeLabel::A, 3), (TypeLabel::C, 3), (TypeLabel::G2, 2)] {
            let d = build_affine_data(t, n).unwrap();
            let all = enumerate_group(&d);
            let subsets: Vec<Vec<usize>> = (0..(1u32 << n))
                .map(|mask| (1..=n).filter(|&j| mask & (1 << (j - 1)) != 0).collect())
                .collect();
            for j_set in &subsets {
                let reps = enumerate_wj(&d, j_set);
                let wj_size = {
                    // |W_J| via the parabolic subgroup itself.
                    let mut seen = alloc::collections::BTreeSet::new();
                    let mut frontier = vec![WeylElement::identity(&d)];
                    seen.insert(frontier[0].clone());
                    while let Some(w) = frontier.pop() {
                        for &j in j_set {
                            let v = multiply(&w, &simple_reflection(&d, j).unwrap());
                            if seen.insert(v.clone()) {
                                frontier.push(v);
                            }
                        }
                    }
                    seen.len()
                };
                assert_eq!(reps.len() * wj_size, all.len());
                for x in &all {
                    let rep = min_coset_rep(&d, x, j_set);
                    assert!(reps.contains(&rep));
                    // x = rep * x_J with l(x) = l(rep) + l(x_J)
                    let xj = multiply(&rep.inverse(), x);
                    assert_eq!(
                        length(&d, x),
                        length(&d, &rep) + length(&d, &xj),
                        "lengths must add"
                    );
                }
            }
        }
    }

    #[test]
    fn wj_printed_g2() {
        // W^J for J = {1} in G2: e, s2, s1s2, s2s1s2, s1s2s1s2, s2s1s2s1s2.
        let d = g2();
        let reps = enumerate_wj(&d, &[1]);
        let words: Vec<Vec<usize>> = reps.iter().map(|w| reduced_word(&d, w)).collect();
        assert_eq!(
            words,
            vec![
                vec![],
                vec![2],
                vec![1, 2],
                vec![2, 1, 2],
                vec![1, 2, 1, 2],
                vec![2, 1, 2, 1, 2],
            ]
        );
    }

    #[test]
    fn orbit_sizes_match_quotients() {
        let d = build_affine_data(TypeLabel::A, 3).unwrap();
        // Orbit of rho has |W| distinct images.
        let rho = GeoWeight::from_integers(&[1, 1, 1]);
        let mut orbit = alloc::collections::BTreeSet::new();
        for w in enumerate_group(&d) {
            orbit.insert(
                w.apply_geo(&rho)
                    .coords
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<alloc::vec::Vec<_>>(),
            );
        }
        assert_eq!(orbit.len(), 24);
        // Orbit of omega_1 has |W|/|W_J| images with J = {2,3}.
        let om1 = GeoWeight::from_integers(&[1, 0, 0]);
        let mut orbit1 = alloc::collections::BTreeSet::new();
        for w in enumerate_group(&d) {
            orbit1.insert(
                w.apply_geo(&om1)
                    .coords
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<alloc::vec::Vec<_>>(),
            );
        }
        assert_eq!(orbit1.len(), 4);
    }
}
