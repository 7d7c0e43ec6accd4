//! Small dense complex linear algebra.
//!
//! Only what the two-qubit swap problem needs: matrices of dimension 2, 4 and
//! 16 (plus the 8-dimensional intermediates that appear while building
//! three-factor Kronecker products), the Pauli matrices, the partial trace
//! over the two middle qubits of a four-qubit register, and the eigenvalues
//! of a real symmetric 3×3 matrix.
//!
//! Qubit ordering for the four-qubit register is `A, B, B', C`: `B` is the
//! second qubit of the Alice–Bob pair and `B'` the first qubit of the
//! Bob–Charlie pair. With that ordering `ρ_AB ⊗ ρ_BC` is a plain Kronecker
//! product and the basis index of `|a b b' c⟩` is `8a + 4b + 2b' + c`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dimensions a [`ComplexMatrix`] may take.
pub const SUPPORTED_DIMS: [usize; 5] = [2, 3, 4, 8, 16];

/// Default symmetry tolerance for [`RealSymmetric3`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Off-diagonal magnitude below which [`eig_sym3`] reads eigenvalues straight
/// off the diagonal.
pub const DIAGONAL_TOL: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries. Rejects non-finite values.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::contract(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::contract("matrix entries must be finite"));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `|v⟩⟨v|` for a column vector `v`.
    pub fn outer(v: &[Complex64]) -> Result<Self> {
        let dim = v.len();
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for vi in v {
            for vj in v {
                data.push(vi * vj.conj());
            }
        }
        Ok(Self { dim, data })
    }

    pub fn diag(entries: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(entries.len())?;
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Self { dim: n, data }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data })
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.adjoint())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::contract(format!(
                "dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if SUPPORTED_DIMS.contains(&dim) {
        Ok(())
    } else {
        Err(Error::contract(format!("unsupported matrix dimension {dim}")))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

// The operator impls panic on dimension mismatch; use `matmul` and friends
// when the dimensions are not known statically.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("dimension mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Identity and the three Pauli matrices, indexed 0..=3.
pub fn pauli(index: usize) -> ComplexMatrix {
    let (o, z, i) = (ONE, ZERO, Complex64::new(0.0, 1.0));
    let data = match index {
        0 => vec![o, z, z, o],
        1 => vec![z, o, o, z],
        2 => vec![z, -i, i, z],
        3 => vec![o, z, z, -o],
        _ => panic!("pauli index {index} out of range"),
    };
    ComplexMatrix { dim: 2, data }
}

pub fn sigma_x() -> ComplexMatrix {
    pauli(1)
}

pub fn sigma_y() -> ComplexMatrix {
    pauli(2)
}

pub fn sigma_z() -> ComplexMatrix {
    pauli(3)
}

/// Kronecker product `a ⊗ b`; `a` indexes the more significant factor.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (n, m) = (a.dim, b.dim);
    let dim = n * m;
    check_dim(dim).map_err(|_| {
        Error::contract(format!(
            "tensor of {n}x{n} and {m}x{m} gives unsupported dimension {dim}"
        ))
    })?;
    let mut data = vec![ZERO; dim * dim];
    for i in 0..n {
        for j in 0..n {
            let aij = a.data[i * n + j];
            if aij == ZERO {
                continue;
            }
            for k in 0..m {
                let row = (i * m + k) * dim + j * m;
                for l in 0..m {
                    data[row + l] = aij * b.data[k * m + l];
                }
            }
        }
    }
    Ok(ComplexMatrix { dim, data })
}

/// Traces out qubits `B` and `B'` of a 16×16 operator on `A, B, B', C`.
///
/// The input need not have unit trace; the output trace equals the input's.
pub fn partial_trace_middle(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.dim != 16 {
        return Err(Error::contract(format!(
            "partial_trace_middle needs a 16x16 operator, got {}x{}",
            m.dim, m.dim
        )));
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for a in 0..2 {
        for c in 0..2 {
            for a2 in 0..2 {
                for c2 in 0..2 {
                    let mut acc = ZERO;
                    for mid in 0..4 {
                        let row = 8 * a + 2 * mid + c;
                        let col = 8 * a2 + 2 * mid + c2;
                        acc += m[(row, col)];
                    }
                    out[(2 * a + c, 2 * a2 + c2)] = acc;
                }
            }
        }
    }
    Ok(out)
}

/// True iff every entry of `m - m†` has modulus at most `tol`.
pub fn hermitize_check(m: &ComplexMatrix, tol: f64) -> bool {
    let n = m.dim;
    for i in 0..n {
        for j in i..n {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Real symmetric 3×3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSymmetric3 {
    entries: [[f64; 3]; 3],
}

impl RealSymmetric3 {
    /// Accepts `entries` if it is symmetric within [`SYMMETRY_TOL`].
    pub fn new(entries: [[f64; 3]; 3]) -> Result<Self> {
        Self::with_tolerance(entries, SYMMETRY_TOL)
    }

    pub fn with_tolerance(entries: [[f64; 3]; 3], tol: f64) -> Result<Self> {
        if entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::contract("matrix entries must be finite"));
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                let gap = (entries[i][j] - entries[j][i]).abs();
                if gap > tol {
                    return Err(Error::contract(format!(
                        "matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {gap:e}"
                    )));
                }
            }
        }
        // Symmetrize so the solver sees an exactly symmetric matrix.
        let mut sym = entries;
        for i in 0..3 {
            for j in (i + 1)..3 {
                let avg = 0.5 * (entries[i][j] + entries[j][i]);
                sym[i][j] = avg;
                sym[j][i] = avg;
            }
        }
        Ok(Self { entries: sym })
    }

    /// `Mᵀ M` for an arbitrary real 3×3 `M`.
    pub fn gram(m: &[[f64; 3]; 3]) -> Self {
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let v: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        Self { entries: g }
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    pub fn determinant(&self) -> f64 {
        det3(&self.entries)
    }
}

fn det3(a: &[[f64; 3]; 3]) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn cross(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn normalized(u: [f64; 3]) -> [f64; 3] {
    let n = dot(u, u).sqrt();
    [u[0] / n, u[1] / n, u[2] / n]
}

fn quad_form(a: &[[f64; 3]; 3], u: [f64; 3], v: [f64; 3]) -> f64 {
    (0..3)
        .map(|i| u[i] * (0..3).map(|j| a[i][j] * v[j]).sum::<f64>())
        .sum()
}

/// Eigenvalues of a real symmetric 3×3 matrix, sorted descending.
///
/// The trigonometric solution of the characteristic cubic locates the
/// eigenvalue farthest from the other two. That root is refined by a
/// Rayleigh quotient on its eigenvector, and the remaining pair comes from
/// the exact 2×2 problem on the orthogonal complement. Degenerate pairs
/// (ubiquitous for the states handled here) therefore keep full precision
/// instead of the square-root loss the bare cubic formula suffers at a
/// double root.
pub fn eig_sym3(m: &RealSymmetric3) -> [f64; 3] {
    let a = &m.entries;
    let off = a[0][1].abs().max(a[0][2].abs()).max(a[1][2].abs());
    if off <= DIAGONAL_TOL {
        return sorted_desc([a[0][0], a[1][1], a[2][2]]);
    }

    let q = m.trace() / 3.0;
    let mut b = *a;
    for (i, row) in b.iter_mut().enumerate() {
        row[i] -= q;
    }
    let p2 = (b[0][0] * b[0][0]
        + b[1][1] * b[1][1]
        + b[2][2] * b[2][2]
        + 2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]))
        / 6.0;
    let p = p2.sqrt();
    if p == 0.0 {
        return [q, q, q];
    }
    let half_det = (det3(&b) / (p * p * p) / 2.0).clamp(-1.0, 1.0);
    let phi = half_det.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let mid = 3.0 * q - hi - lo;
    let isolated = if hi - mid >= mid - lo { hi } else { lo };

    let v = match null_vector(a, isolated) {
        Some(v) => v,
        None => return sorted_desc([hi, mid, lo]),
    };
    let mu = quad_form(a, v, v);

    // Orthonormal basis {u, w} of the complement of v.
    let axis = (0..3)
        .min_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs()))
        .unwrap_or(0);
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let u = normalized(cross(v, e));
    let w = cross(v, u);
    let (buu, buw, bww) = (quad_form(a, u, u), quad_form(a, u, w), quad_form(a, w, w));
    let mean = 0.5 * (buu + bww);
    let radius = (0.5 * (buu - bww)).hypot(buw);
    sorted_desc([mu, mean + radius, mean - radius])
}

/// Unit vector spanning the null space of `a - λI`, taken from the largest
/// cross product of its rows.
fn null_vector(a: &[[f64; 3]; 3], lambda: f64) -> Option<[f64; 3]> {
    let mut s = *a;
    for (i, row) in s.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let candidates = [cross(s[0], s[1]), cross(s[0], s[2]), cross(s[1], s[2])];
    let best = candidates
        .into_iter()
        .max_by(|x, y| dot(*x, *x).total_cmp(&dot(*y, *y)))?;
    if dot(best, best) == 0.0 || !dot(best, best).is_finite() {
        return None;
    }
    Some(normalized(best))
}

fn sorted_desc(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(|x, y| y.total_cmp(x));
    v
}
