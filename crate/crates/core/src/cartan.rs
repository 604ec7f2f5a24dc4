//! Affine Cartan data: Cartan matrices, marks and comarks, root systems,
//! fundamental (co)weights and the invariant pairing.
//!
//! Conventions used throughout the crate:
//!
//! * Cartan entries are `a[i][j] = <alpha_j, alpha_i^vee> = 2(alpha_i,alpha_j)/(alpha_i,alpha_i)`.
//! * The inner product is normalized so that long roots have squared length 2.
//! * In type G2 the first simple root is short and `theta = 3 alpha_1 + 2 alpha_2`,
//!   matching the printed edge weights of the orbit graphs.
//! * Roots are stored in simple-root coordinates, coroots in simple-coroot
//!   coordinates, and points/weights in the fundamental-coweight basis
//!   (`(omega_i, alpha_j) = delta_ij`).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used across the crate.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Supported untwisted affine families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    G2,
}

impl TypeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::G2 => "G2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanError(pub String);

impl core::fmt::Display for CartanError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A root or coroot in simple-(co)root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    pub coords: Vec<i64>,
    pub is_coroot: bool,
}

impl RootVector {
    pub fn root(coords: Vec<i64>) -> Self {
        RootVector { coords, is_coroot: false }
    }

    pub fn coroot(coords: Vec<i64>) -> Self {
        RootVector { coords, is_coroot: true }
    }

    pub fn simple(i: usize, n: usize) -> Self {
        let mut coords = vec![0i64; n];
        coords[i] = 1;
        RootVector::root(coords)
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c != 0)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn negated(&self) -> Self {
        RootVector {
            coords: self.coords.iter().map(|&c| -c).collect(),
            is_coroot: self.is_coroot,
        }
    }
}

/// A point of the ambient space in fundamental-coweight coordinates,
/// i.e. `coords[j] = (x, alpha_{j+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeoWeight {
    pub coords: Vec<Rat>,
}

impl GeoWeight {
    pub fn zero(n: usize) -> Self {
        GeoWeight { coords: vec![Rat::zero(); n] }
    }

    pub fn fundamental(i: usize, n: usize) -> Self {
        let mut coords = vec![Rat::zero(); n];
        coords[i] = Rat::one();
        GeoWeight { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        GeoWeight { coords: coords.iter().map(|&c| rat(c)).collect() }
    }

    pub fn add(&self, other: &GeoWeight) -> GeoWeight {
        GeoWeight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> GeoWeight {
        GeoWeight { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Integer coordinates, if the point lies in the geometric weight lattice.
    pub fn integer_coords(&self) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            if !c.is_integer() {
                return None;
            }
            out.push(int_to_i64(c.to_integer()));
        }
        Some(out)
    }
}

fn int_to_i64(v: BigInt) -> i64 {
    use num_traits::ToPrimitive;
    v.to_i64().expect("coordinate exceeds i64 range")
}

/// One affine type: Cartan matrices, marks, comarks and root-system geometry.
#[derive(Debug, Clone)]
pub struct AffineCartanData {
    type_label: TypeLabel,
    rank: usize,
    affine_cartan: Vec<Vec<i64>>,
    finite_cartan: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    gram: Vec<Vec<Rat>>,
    positive_roots: Vec<RootVector>,
    theta: RootVector,
}

/// Builds the affine data for a supported `(type, rank)` pair.
///
/// Marks and comarks are computed as the primitive null vectors of the affine
/// Cartan matrix and cross-checked against the coordinates of the highest
/// root and its coroot.
pub fn build_affine_data(type_label: TypeLabel, rank: usize) -> Result<AffineCartanData, CartanError> {
    let finite_cartan = finite_cartan_matrix(type_label, rank)?;
    let n = rank;

    let positive_roots = generate_positive_roots(&finite_cartan, n);
    let theta = highest_root_from(&positive_roots);

    // Symmetrizer d_i = (alpha_i, alpha_i)/2, normalized so theta is long.
    let d = symmetrizer(&finite_cartan, n)?;
    let gram: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| &d[i] * rat(finite_cartan[i][j])).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            if gram[i][j] != gram[j][i] {
                return Err(CartanError(String::from("Cartan matrix is not symmetrizable")));
            }
        }
    }
    let theta_norm = quad_form(&gram, &theta.coords);
    if theta_norm != rat(2) {
        return Err(CartanError(format!(
            "normalization failed: (theta,theta) = {} instead of 2",
            theta_norm
        )));
    }

    // Affine Cartan matrix, with alpha_0 paired through -theta.
    let theta_coroot = coroot_of(&gram, &theta)?;
    let mut affine = vec![vec![0i64; n + 1]; n + 1];
    affine[0][0] = 2;
    for j in 1..=n {
        // a_{0,j} = -<alpha_j, theta^vee>, a_{j,0} = -<theta, alpha_j^vee>.
        let mut pair_0j = 0i64;
        for (k, &c) in theta_coroot.coords.iter().enumerate() {
            pair_0j += c * finite_cartan[k][j - 1];
        }
        affine[0][j] = -pair_0j;
        let mut pair_j0 = 0i64;
        for (k, &c) in theta.coords.iter().enumerate() {
            pair_j0 += finite_cartan[j - 1][k] * c;
        }
        affine[j][0] = -pair_j0;
        for k in 1..=n {
            affine[j][k] = finite_cartan[j - 1][k - 1];
        }
    }

    let marks = primitive_null_vector(&affine, false)?;
    let comarks = primitive_null_vector(&affine, true)?;
    if marks[0] != 1 || comarks[0] != 1 {
        return Err(CartanError(String::from("a_0 = a_0^vee = 1 failed")));
    }
    for i in 0..n {
        if marks[i + 1] != theta.coords[i] || comarks[i + 1] != theta_coroot.coords[i] {
            return Err(CartanError(String::from(
                "marks/comarks disagree with highest-(co)root coordinates",
            )));
        }
    }

    Ok(AffineCartanData {
        type_label,
        rank,
        affine_cartan: affine,
        finite_cartan,
        marks,
        comarks,
        gram,
        positive_roots,
        theta,
    })
}

impl AffineCartanData {
    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `(n+1) x (n+1)` affine Cartan matrix indexed by `0..=n`.
    pub fn affine_cartan(&self) -> &[Vec<i64>] {
        &self.affine_cartan
    }

    /// `n x n` finite Cartan matrix; row/column `i` corresponds to `alpha_{i+1}`.
    pub fn finite_cartan(&self) -> &[Vec<i64>] {
        &self.finite_cartan
    }

    /// Marks `a_0..a_n`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Comarks `a_0^vee..a_n^vee`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    /// Gram matrix `(alpha_i, alpha_j)` of the finite simple roots.
    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// The positive roots, in graded lexicographic order.
    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    /// The highest root `theta`.
    pub fn highest_root(&self) -> &RootVector {
        &self.theta
    }

    /// The coroot `theta^vee`, whose coordinates are the finite comarks.
    pub fn theta_coroot(&self) -> RootVector {
        RootVector::coroot(self.comarks[1..].to_vec())
    }

    /// `(alpha_i, alpha_i)/2` for the finite node `i` (0-indexed).
    pub fn half_norm(&self, i: usize) -> Rat {
        ratio(self.comarks[i + 1], self.marks[i + 1])
    }

    /// The coroot of a positive root, in simple-coroot coordinates.
    pub fn coroot(&self, alpha: &RootVector) -> Result<RootVector, CartanError> {
        if alpha.is_coroot {
            return Err(CartanError(String::from("coroot() expects a root")));
        }
        coroot_of(&self.gram, alpha)
    }

    /// Positive roots supported on a subset `J` of finite nodes (1-indexed).
    pub fn positive_roots_supported_on(&self, j_set: &[usize]) -> Vec<RootVector> {
        self.positive_roots
            .iter()
            .filter(|r| {
                r.coords
                    .iter()
                    .enumerate()
                    .all(|(k, &c)| c == 0 || j_set.contains(&(k + 1)))
            })
            .cloned()
            .collect()
    }

    /// Geometric coordinates of a coroot vector: `(lambda, alpha_j)` for all j.
    pub fn coroot_to_geo(&self, coroot: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|j| {
                (0..self.rank)
                    .map(|i| coroot[i] * self.finite_cartan[i][j])
                    .sum()
            })
            .collect()
    }

    /// Exact pairing `(x, y)` with `y` a root or coroot.
    pub fn pairing(&self, x: &PairingArg, y: &RootVector) -> Result<Rat, CartanError> {
        let n = self.rank;
        if y.coords.len() != n {
            return Err(CartanError(String::from("rank mismatch in pairing")));
        }
        let y_root = self.to_root_coords(y);
        match x {
            PairingArg::Geo(g) => {
                if g.coords.len() != n {
                    return Err(CartanError(String::from("rank mismatch in pairing")));
                }
                Ok(g.coords
                    .iter()
                    .zip(&y_root)
                    .map(|(c, b)| c * b)
                    .fold(Rat::zero(), |acc, t| acc + t))
            }
            PairingArg::Root(r) => {
                if r.coords.len() != n {
                    return Err(CartanError(String::from("rank mismatch in pairing")));
                }
                let x_root = self.to_root_coords(r);
                let mut acc = Rat::zero();
                for i in 0..n {
                    for j in 0..n {
                        acc += &x_root[i] * &self.gram[i][j] * &y_root[j];
                    }
                }
                Ok(acc)
            }
        }
    }

    fn to_root_coords(&self, v: &RootVector) -> Vec<Rat> {
        if v.is_coroot {
            // alpha_i^vee = alpha_i / d_i
            (0..self.rank)
                .map(|i| rat(v.coords[i]) / self.half_norm(i))
                .collect()
        } else {
            v.coords.iter().map(|&c| rat(c)).collect()
        }
    }
}

/// First argument of [`AffineCartanData::pairing`].
pub enum PairingArg {
    Geo(GeoWeight),
    Root(RootVector),
}

fn finite_cartan_matrix(type_label: TypeLabel, rank: usize) -> Result<Vec<Vec<i64>>, CartanError> {
    let n = rank;
    let unsupported = |msg: &str| Err(CartanError(format!("unsupported type/rank: {}", msg)));
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    match type_label {
        TypeLabel::A => {
            if n < 1 {
                return unsupported("A_n needs n >= 1");
            }
            for i in 0..n.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        TypeLabel::B => {
            if n < 2 {
                return unsupported("B_n needs n >= 2");
            }
            for i in 0..n - 1 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2.
            a[n - 1][n - 2] = -2;
        }
        TypeLabel::C => {
            if n < 2 {
                return unsupported("C_n needs n >= 2");
            }
            for i in 0..n - 1 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            // alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2.
            a[n - 2][n - 1] = -2;
        }
        TypeLabel::D => {
            if n < 4 {
                return unsupported("D_n needs n >= 4");
            }
            for i in 0..n - 2 {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        TypeLabel::G2 => {
            if n != 2 {
                return unsupported("G2 has rank 2");
            }
            // alpha_1 short, alpha_2 long; theta = 3 alpha_1 + 2 alpha_2.
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    Ok(a)
}

/// Reflection `s_{i+1}` applied to root coordinates (left action).
pub fn reflect_root_coords(cartan: &[Vec<i64>], i: usize, coords: &[i64]) -> Vec<i64> {
    let mut out = coords.to_vec();
    let pair: i64 = (0..coords.len()).map(|j| cartan[i][j] * coords[j]).sum();
    out[i] -= pair;
    out
}

fn generate_positive_roots(cartan: &[Vec<i64>], n: usize) -> Vec<RootVector> {
    let mut set: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut c = vec![0i64; n];
            c[i] = 1;
            c
        })
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        let current = set.clone();
        for coords in &current {
            for i in 0..n {
                let img = reflect_root_coords(cartan, i, coords);
                if img.iter().all(|&c| c >= 0) && !set.contains(&img) {
                    set.push(img);
                    changed = true;
                }
            }
        }
    }
    set.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then(a.cmp(b))
    });
    set.into_iter().map(RootVector::root).collect()
}

fn highest_root_from(roots: &[RootVector]) -> RootVector {
    roots.last().expect("nonempty root system").clone()
}

fn symmetrizer(cartan: &[Vec<i64>], n: usize) -> Result<Vec<Rat>, CartanError> {
    // Solve d_i a_{ij} = d_j a_{ji} with the highest root long, i.e. max d = 1.
    let mut d: Vec<Option<Rat>> = vec![None; n];
    d[0] = Some(Rat::one());
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(di * ratio(cartan[i][j], cartan[j][i]));
                queue.push(j);
            }
        }
    }
    let mut vals: Vec<Rat> = d
        .into_iter()
        .map(|v| v.ok_or_else(|| CartanError(String::from("disconnected diagram"))))
        .collect::<Result<_, _>>()?;
    let max = vals.iter().cloned().fold(Rat::zero(), |a, b| if b > a { b } else { a });
    for v in &mut vals {
        *v /= max.clone();
    }
    Ok(vals)
}

fn quad_form(gram: &[Vec<Rat>], coords: &[i64]) -> Rat {
    let n = coords.len();
    let mut acc = Rat::zero();
    for i in 0..n {
        for j in 0..n {
            acc += rat(coords[i]) * &gram[i][j] * rat(coords[j]);
        }
    }
    acc
}

fn coroot_of(gram: &[Vec<Rat>], alpha: &RootVector) -> Result<RootVector, CartanError> {
    // alpha^vee = 2 alpha/(alpha,alpha); coordinates in the simple-coroot basis
    // are a_j d_j / d_alpha.
    let norm_half = quad_form(gram, &alpha.coords) / rat(2);
    if norm_half.is_zero() {
        return Err(CartanError(String::from("zero root has no coroot")));
    }
    let mut coords = Vec::with_capacity(alpha.coords.len());
    for (j, &c) in alpha.coords.iter().enumerate() {
        let dj = &gram[j][j] / rat(2);
        let val = rat(c) * dj / norm_half.clone();
        if !val.is_integer() {
            return Err(CartanError(String::from("coroot has non-integer coordinates")));
        }
        coords.push(int_to_i64(val.to_integer()));
    }
    Ok(RootVector::coroot(coords))
}

fn primitive_null_vector(matrix: &[Vec<i64>], left: bool) -> Result<Vec<i64>, CartanError> {
    let m = matrix.len();
    // Kernel of the matrix (or its transpose) over the rationals.
    let mut a: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| rat(if left { matrix[j][i] } else { matrix[i][j] }))
                .collect()
        })
        .collect();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0usize;
    for col in 0..m {
        if let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) {
            a.swap(row, p);
            let inv = a[row][col].clone();
            for j in 0..m {
                a[row][j] /= inv.clone();
            }
            for r in 0..m {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..m {
                        let t = &a[row][j] * &f;
                        a[r][j] -= t;
                    }
                }
            }
            pivot_col_of_row.push(col);
            row += 1;
        }
    }
    if row != m - 1 {
        return Err(CartanError(String::from("affine Cartan matrix has wrong rank")));
    }
    let free_col = (0..m)
        .find(|c| !pivot_col_of_row.contains(c))
        .expect("one free column");
    let mut v = vec![Rat::zero(); m];
    v[free_col] = Rat::one();
    for (r, &pc) in pivot_col_of_row.iter().enumerate() {
        v[pc] = -a[r][free_col].clone();
    }
    // Scale to a primitive positive integer vector.
    let mut denom = BigInt::one();
    for x in &v {
        denom = num_integer::lcm(denom, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &denom / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::gcd(g, x.abs());
    }
    let mut out: Vec<i64> = ints.iter().map(|x| int_to_i64(x / &g)).collect();
    if out.iter().any(|&x| x < 0) {
        for x in &mut out {
            *x = -*x;
        }
    }
    if out.iter().any(|&x| x <= 0) {
        return Err(CartanError(String::from("null vector is not positive")));
    }
    Ok(out)
}
