//! Linear algebraic groups given by polynomial equations in the matrix
//! entries `x_ij`, their Lie algebras, restriction of scalars and reduction
//! mod `p`.

mod lie;
mod mpoly;
mod ros;

pub use lie::{
    adjoint_matrix, is_solvable_lie, lie_bracket, sl2_standard, tangent_space_at_identity, LieAlgebraData,
    Solvability,
};
pub use mpoly::{MPoly, MPolyRing, ModPoly};
pub use ros::{restriction_of_scalars, ros_point};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::exact::{Int, Matrix, PrimeField, Rat, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("SingularForm: the form matrix has determinant 0")]
    SingularForm,
    #[error("BracketNotClosed: the tangent space is not closed under the Lie bracket")]
    BracketNotClosed,
    #[error("NotStabilizing: conjugation moves a basis element out of the Lie algebra")]
    NotStabilizing,
    #[error("BadReduction: the identity does not satisfy the equations mod {0}")]
    BadReduction(u64),
    #[error("TooLarge: determinant expansion is limited to n <= 5, got {0}")]
    TooLarge(usize),
    #[error("InvalidPresentation: {0}")]
    InvalidPresentation(String),
    #[error("NotInvertible: matrix is singular")]
    NotInvertible,
    #[error("DependentBasis: basis matrices are linearly dependent")]
    DependentBasis,
    #[error("SizeMismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("PresentationParse: line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("UnknownGroup: {0}")]
    UnknownGroup(String),
    #[error("NotPrime: {0}")]
    NotPrime(u64),
}

/// Largest `n` for which `det(x_ij)` is expanded.
pub const MAX_DET_SIZE: usize = 5;

/// A subgroup of `GL_n` cut out by polynomials in `x_ij`; variable
/// `x_ij` has index `i * n + j` (0-based, row-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    n: usize,
    polys: Vec<MPoly>,
    label: String,
}

pub fn var_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

impl GroupPresentation {
    /// Checks that every polynomial lives in `n^2` variables and vanishes
    /// at the identity.
    pub fn new(n: usize, polys: Vec<MPoly>, label: impl Into<String>) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidPresentation("matrix size must be positive".into()));
        }
        if let Some(p) = polys.iter().find(|p| p.nvars() != n * n) {
            return Err(GroupError::SizeMismatch {
                expected: n * n,
                got: p.nvars(),
            });
        }
        let id = identity_point(n);
        if polys.iter().any(|p| !p.eval(&id).is_zero()) {
            return Err(GroupError::InvalidPresentation(
                "identity does not satisfy the equations".into(),
            ));
        }
        Ok(GroupPresentation {
            n,
            polys,
            label: label.into(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Invertible and satisfies every equation.
    pub fn contains(&self, g: &Matrix<Rat>) -> bool {
        if g.size() != self.n || g.det(&Rationals).is_zero() {
            return false;
        }
        self.polys.iter().all(|p| p.eval(g.entries()).is_zero())
    }

    pub fn var_name(&self, v: usize) -> String {
        var_name(self.n, v)
    }

    /// Equations rendered with `x_ij` names, one per line.
    pub fn render_equations(&self) -> Vec<String> {
        self.polys
            .iter()
            .map(|p| p.render_with(|v| var_name(self.n, v)))
            .collect()
    }
}

fn var_name(n: usize, v: usize) -> String {
    let (i, j) = (v / n + 1, v % n + 1);
    if n < 10 {
        format!("x{i}{j}")
    } else {
        format!("x{i}_{j}")
    }
}

fn identity_point(n: usize) -> Vec<Rat> {
    (0..n * n)
        .map(|k| if k / n == k % n { Rat::one() } else { Rat::zero() })
        .collect()
}

/// Matrix of the coordinate functions `x_ij`.
pub(crate) fn variable_matrix(n: usize) -> Matrix<MPoly> {
    Matrix::from_vec(n, (0..n * n).map(|v| MPoly::var(n * n, v)).collect())
}

/// `SL_n`: the single equation `det(x_ij) - 1`.
pub fn sl_group(n: usize) -> Result<GroupPresentation, GroupError> {
    if n < 2 {
        return Err(GroupError::InvalidPresentation("SL_n needs n >= 2".into()));
    }
    if n > MAX_DET_SIZE {
        return Err(GroupError::TooLarge(n));
    }
    let nv = n * n;
    let mut terms = Vec::new();
    for (perm, sign) in permutations(n) {
        let mut e = vec![0u32; nv];
        for (i, &j) in perm.iter().enumerate() {
            e[var_index(n, i, j)] = 1;
        }
        terms.push((e, Rat::from_integer(Int::from(sign))));
    }
    terms.push((vec![0; nv], -Rat::one()));
    GroupPresentation::new(n, vec![MPoly::from_terms(nv, terms)], format!("SL_{n}"))
}

/// All permutations of `0..n` with their signs.
fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if prefix.len() == n {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Isometry group of the bilinear form `P`: entries of `X^T P X - P`.
pub fn form_group(p: &Matrix<Rat>) -> Result<GroupPresentation, GroupError> {
    if p.det(&Rationals).is_zero() {
        return Err(GroupError::SingularForm);
    }
    let n = p.size();
    let ring = MPolyRing { nvars: n * n };
    let x = variable_matrix(n);
    let pc = p.map(|c| MPoly::constant(n * n, c.clone()));
    let lhs = x.transpose().mul(&pc, &ring).mul(&x, &ring).sub(&pc, &ring);
    GroupPresentation::new(n, lhs.entries().to_vec(), format!("O({})", render_form(p)))
}

fn render_form(p: &Matrix<Rat>) -> String {
    p.rows()
        .iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Upper unitriangular matrices.
pub fn unitriangular(n: usize) -> Result<GroupPresentation, GroupError> {
    let nv = n * n;
    let mut polys = Vec::new();
    for i in 0..n {
        for j in 0..=i {
            let x = MPoly::var(nv, var_index(n, i, j));
            polys.push(if i == j {
                x.sub(&MPoly::constant(nv, Rat::one()))
            } else {
                x
            });
        }
    }
    GroupPresentation::new(n, polys, format!("U_{n}"))
}

/// `GL_n` with no equations; `n = 1` is the multiplicative group.
pub fn general_linear(n: usize) -> Result<GroupPresentation, GroupError> {
    let label = if n == 1 { "G_m".to_string() } else { format!("GL_{n}") };
    GroupPresentation::new(n, Vec::new(), label)
}

/// Named presentations available without a file.
pub const BUILTIN_GROUPS: &[&str] = &["sl2", "sl3", "sl4", "sl5", "sp2", "o2", "u2", "u3", "gm", "gl2"];

pub fn builtin_presentation(name: &str) -> Result<GroupPresentation, GroupError> {
    let int_form = |rows: [[i64; 2]; 2]| {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| Rat::from_integer(Int::from(c))).collect())
                .collect(),
        )
    };
    match name {
        "sl2" => sl_group(2),
        "sl3" => sl_group(3),
        "sl4" => sl_group(4),
        "sl5" => sl_group(5),
        "sp2" => form_group(&int_form([[0, 1], [-1, 0]])).map(|g| g.with_label("Sp_2")),
        "o2" => form_group(&int_form([[1, 0], [0, 1]])).map(|g| g.with_label("O_2")),
        "u2" => unitriangular(2),
        "u3" => unitriangular(3),
        "gm" => general_linear(1),
        "gl2" => general_linear(2),
        other => Err(GroupError::UnknownGroup(other.to_string())),
    }
}

/// Equations over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPresentation {
    pub p: u64,
    pub n: usize,
    pub polys: Vec<ModPoly>,
    /// False when some coefficient had `p` in its denominator and the
    /// equation had to be rescaled.
    pub good_reduction: bool,
    pub label: String,
}

impl ReducedPresentation {
    /// `g` given row-major with entries in `[0, p)`.
    pub fn satisfied_by(&self, g: &[u64]) -> bool {
        g.len() == self.n * self.n && self.polys.iter().all(|f| f.eval(g) == 0)
    }
}

/// Reduces coefficients mod `p`. An equation whose coefficients have `p`
/// in a denominator is first multiplied by the power of `p` that makes it
/// `p`-integral and primitive, and the good-reduction flag is cleared.
pub fn reduce_mod_p(g: &GroupPresentation, p: u64) -> Result<ReducedPresentation, GroupError> {
    let field = PrimeField::new(p).ok_or(GroupError::NotPrime(p))?;
    let pi = Int::from(p);
    let mut good = true;
    let mut polys = Vec::new();
    for f in g.polys() {
        let worst = f
            .terms()
            .map(|(_, c)| denominator_valuation(c, &pi))
            .max()
            .unwrap_or(0);
        let scaled = if worst > 0 {
            good = false;
            f.scale(&Rat::from_integer(pi.pow(worst)))
        } else {
            f.clone()
        };
        polys.push(scaled.reduce_mod(&field).expect("p-integral after scaling"));
    }
    let out = ReducedPresentation {
        p,
        n: g.size(),
        polys,
        good_reduction: good,
        label: format!("{} mod {p}", g.label()),
    };
    let id: Vec<u64> = (0..g.size() * g.size())
        .map(|k| u64::from(k / g.size() == k % g.size()))
        .collect();
    if !out.satisfied_by(&id) {
        return Err(GroupError::BadReduction(p));
    }
    Ok(out)
}

fn denominator_valuation(c: &Rat, p: &Int) -> u32 {
    let mut d = c.denom().clone();
    let mut v = 0;
    while (&d % p).is_zero() {
        d /= p;
        v += 1;
    }
    v
}

/// Text form: `size=`, optional `label=`, then one polynomial per line as
/// whitespace-separated terms `e_1,...,e_{n^2}:a/b`. `#` starts a comment.
impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "size={}", self.n)?;
        writeln!(f, "label={}", self.label)?;
        for p in &self.polys {
            let terms: Vec<String> = p
                .terms()
                .map(|(e, c)| {
                    let e: Vec<String> = e.iter().map(|k| k.to_string()).collect();
                    format!("{}:{}", e.join(","), c)
                })
                .collect();
            if terms.is_empty() {
                writeln!(f, "0")?;
            } else {
                writeln!(f, "{}", terms.join(" "))?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupPresentation {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let mut n = None;
        let mut label = String::from("G");
        let mut polys = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| GroupError::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("size=") {
                let k: usize = v.trim().parse().map_err(|_| err(format!("bad size {v:?}")))?;
                if k == 0 {
                    return Err(err("size must be positive".into()));
                }
                n = Some(k);
                continue;
            }
            if let Some(v) = line.strip_prefix("label=") {
                label = v.trim().to_string();
                continue;
            }
            let n = n.ok_or_else(|| err("polynomial before size=".into()))?;
            let nv = n * n;
            if line == "0" {
                polys.push(MPoly::zero(nv));
                continue;
            }
            let mut terms = Vec::new();
            for tok in line.split_whitespace() {
                let (e, c) = tok
                    .split_once(':')
                    .ok_or_else(|| err(format!("term {tok:?} lacks ':'")))?;
                let e: Vec<u32> = e
                    .split(',')
                    .map(|k| k.trim().parse::<u32>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| err(format!("bad exponents in {tok:?}")))?;
                if e.len() != nv {
                    return Err(err(format!("expected {nv} exponents, got {}", e.len())));
                }
                let c: Rat = c.parse().map_err(|_| err(format!("bad coefficient in {tok:?}")))?;
                terms.push((e, c));
            }
            polys.push(MPoly::from_terms(nv, terms));
        }
        let n = n.ok_or(GroupError::Parse {
            line: 0,
            msg: "missing size=".into(),
        })?;
        GroupPresentation::new(n, polys, label)
    }
}
