//! Closed-form component tables, transcribed entry by entry.
//!
//! Every function returns the table exactly as printed, including entries
//! that disagree with a first-principles derivation.  Such entries carry an
//! [`Erratum`] holding the printed value and the pattern-corrected one; the
//! comparator decides which of the two the engine reproduces.

use num_complex::Complex64;

use frw_spin_core::scale_factor::RadiusJet;

/// Kind and range of one tensor index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Frame index `0..4`, reported as is.
    Spatial,
    /// Weyl spinor index, reported counting from one.
    Spinor2,
    /// Dirac spinor index, reported counting from one.
    Spinor4,
}

impl Axis {
    pub fn dim(&self) -> usize {
        match self {
            Axis::Spatial | Axis::Spinor4 => 4,
            Axis::Spinor2 => 2,
        }
    }

    pub fn report(&self, i: usize) -> usize {
        match self {
            Axis::Spatial => i,
            _ => i + 1,
        }
    }
}

/// A printed entry believed to be a typo.
#[derive(Clone, Debug, PartialEq)]
pub struct Erratum {
    pub index: Vec<usize>,
    pub verbatim: Complex64,
    pub corrected: Complex64,
    pub note: &'static str,
}

/// Dense table with optional erratum flags.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceTensor {
    pub axes: Vec<Axis>,
    pub values: Vec<Complex64>,
    pub errata: Vec<Erratum>,
}

const Z: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn im(v: f64) -> Complex64 {
    Complex64::new(0.0, v)
}

fn expi(a: f64) -> Complex64 {
    Complex64::from_polar(1.0, a)
}

impl ReferenceTensor {
    pub fn zeros(axes: Vec<Axis>) -> Self {
        let len = axes.iter().map(Axis::dim).product();
        ReferenceTensor { axes, values: vec![Z; len], errata: Vec::new() }
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.axes.len(), "index rank");
        idx.iter().zip(&self.axes).fold(0, |acc, (i, a)| {
            assert!(*i < a.dim(), "index out of range");
            acc * a.dim() + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> Complex64 {
        self.values[self.offset(idx)]
    }

    fn set(&mut self, idx: &[usize], v: Complex64) {
        let k = self.offset(idx);
        self.values[k] = v;
    }

    /// Sets `t[.., i, j] = v` and `t[.., j, i] = -v`.
    fn anti(&mut self, head: &[usize], i: usize, j: usize, v: Complex64) {
        let mut a = head.to_vec();
        a.extend([i, j]);
        self.set(&a, v);
        let mut b = head.to_vec();
        b.extend([j, i]);
        self.set(&b, -v);
    }

    fn flag(&mut self, idx: &[usize], corrected: Complex64, note: &'static str) {
        let verbatim = self.get(idx);
        self.errata.push(Erratum { index: idx.to_vec(), verbatim, corrected, note });
    }

    /// Value with every flagged entry replaced by its corrected form.
    pub fn corrected(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        for e in &self.errata {
            v[self.offset(&e.index)] = e.corrected;
        }
        v
    }

    pub fn erratum_at(&self, idx: &[usize]) -> Option<&Erratum> {
        self.errata.iter().find(|e| e.index == idx)
    }

    fn matrix(axis: Axis, rows: &[&[Complex64]]) -> Self {
        let mut t = ReferenceTensor::zeros(vec![axis, axis]);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                t.set(&[r, c], *v);
            }
        }
        t
    }
}

const DIMENSION_NOTE: &str = "printed with R^2 where the radius enters to the first power";

/// Commutation coefficients of a stereographic frame in its own
/// coordinates `u`.
pub fn commutators_stereo(u: [f64; 3], jet: &RadiusJet) -> ReferenceTensor {
    let (r, r2) = (jet.r, jet.r * jet.r);
    let mut t = ReferenceTensor::zeros(vec![Axis::Spatial; 3]);
    let h = re(-jet.dr / r2);
    for a in 1..4 {
        t.anti(&[a], 0, a, h);
    }
    let [u1, u2, u3] = u;
    let spatial = [
        (1, 1, 2, -u2),
        (2, 1, 2, u1),
        (1, 1, 3, -u3),
        (3, 1, 3, u1),
        (2, 2, 3, -u3),
        (3, 2, 3, u2),
    ];
    for (k, i, j, num) in spatial {
        t.anti(&[k], i, j, re(num / r2));
        t.flag(&[k, i, j], re(num / r), DIMENSION_NOTE);
        t.flag(&[k, j, i], re(-num / r), DIMENSION_NOTE);
    }
    t
}

/// Commutation coefficients of the spherical frame.
pub fn commutators_spherical(sph: [f64; 3], jet: &RadiusJet) -> ReferenceTensor {
    let [chi, theta, _] = sph;
    let r = jet.r;
    let mut t = ReferenceTensor::zeros(vec![Axis::Spatial; 3]);
    for a in 1..4 {
        t.anti(&[a], 0, a, re(-jet.dr / (r * r)));
    }
    let cot_chi = re(-chi.cos() / (r * chi.sin()));
    t.anti(&[2], 1, 2, cot_chi);
    t.anti(&[3], 1, 3, cot_chi);
    t.anti(&[3], 2, 3, re(-theta.cos() / (r * chi.sin() * theta.sin())));
    t
}

/// Spatial reflection block `(|u|^2 - 2 u_a u_b) / |u|^2` bordered by a one.
fn reflection(u: [f64; 3], sign: f64) -> ReferenceTensor {
    let n2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    let mut t = ReferenceTensor::zeros(vec![Axis::Spatial; 2]);
    t.set(&[0, 0], re(1.0));
    for a in 0..3 {
        for b in 0..3 {
            let delta = if a == b { n2 } else { 0.0 };
            t.set(&[a + 1, b + 1], re(sign * (delta - 2.0 * u[a] * u[b]) / n2));
        }
    }
    t
}

/// `Y -> X` transition in south coordinates.
pub fn transition_s(y: [f64; 3]) -> ReferenceTensor {
    reflection(y, 1.0)
}

/// `X -> Y` transition in north coordinates.
pub fn transition_t(x: [f64; 3]) -> ReferenceTensor {
    reflection(x, 1.0)
}

/// `Ytilde -> X` transition in south coordinates.
pub fn transition_s_tilde(y: [f64; 3]) -> ReferenceTensor {
    reflection(y, -1.0)
}

/// `X -> Ytilde` transition in north coordinates.  The printed matrix
/// repeats the `X -> Y` one; the spatial block should carry the opposite
/// sign, since the inverse of `Ytilde -> X` is that matrix itself.
pub fn transition_t_tilde(x: [f64; 3]) -> ReferenceTensor {
    let mut t = reflection(x, 1.0);
    for a in 1..4 {
        for b in 1..4 {
            let v = t.get(&[a, b]);
            t.flag(&[a, b], -v, "spatial block printed with the sign of the X -> Y transition");
        }
    }
    t
}

/// `E -> X` transition.
pub fn transition_s_hat(sph: [f64; 3]) -> ReferenceTensor {
    let [_, th, ph] = sph;
    let (st, ct, sp, cp) = (th.sin(), th.cos(), ph.sin(), ph.cos());
    ReferenceTensor::matrix(
        Axis::Spatial,
        &[
            &[re(1.0), Z, Z, Z],
            &[Z, re(-sp * st), re(sp * ct), re(cp)],
            &[Z, re(-cp * st), re(cp * ct), re(-sp)],
            &[Z, re(-ct), re(-st), Z],
        ],
    )
}

/// `E -> Ytilde` transition.
pub fn transition_s_check(sph: [f64; 3]) -> ReferenceTensor {
    let [_, th, ph] = sph;
    let (st, ct, sp, cp) = (th.sin(), th.cos(), ph.sin(), ph.cos());
    ReferenceTensor::matrix(
        Axis::Spatial,
        &[
            &[re(1.0), Z, Z, Z],
            &[Z, re(-sp * st), re(-sp * ct), re(-cp)],
            &[Z, re(-cp * st), re(-cp * ct), re(sp)],
            &[Z, re(-ct), re(st), Z],
        ],
    )
}

/// The homomorphism written out component by component for a 2x2 matrix
/// `s = [[s11, s12], [s21, s22]]`.
pub fn homomorphism(s: [[Complex64; 2]; 2]) -> ReferenceTensor {
    let [[s11, s12], [s21, s22]] = s;
    let (c11, c12, c21, c22) = (s11.conj(), s12.conj(), s21.conj(), s22.conj());
    let two = re(2.0);
    let two_i = im(2.0);
    ReferenceTensor::matrix(
        Axis::Spatial,
        &[
            &[
                (c11 * s11 + c12 * s12 + c21 * s21 + c22 * s22) / two,
                (c11 * s12 + c12 * s11 + c21 * s22 + c22 * s21) / two,
                (c12 * s11 - c11 * s12 + c22 * s21 - c21 * s22) / two_i,
                (c11 * s11 - c12 * s12 + c21 * s21 - c22 * s22) / two,
            ],
            &[
                (c21 * s11 + c11 * s21 + c22 * s12 + c12 * s22) / two,
                (c21 * s12 + c12 * s21 + c22 * s11 + c11 * s22) / two,
                (c12 * s21 - c21 * s12 + c22 * s11 - c11 * s22) / two_i,
                (c21 * s11 + c11 * s21 - c22 * s12 - c12 * s22) / two,
            ],
            &[
                (c11 * s21 - c21 * s11 + c12 * s22 - c22 * s12) / two_i,
                (c12 * s21 - c21 * s12 + c11 * s22 - c22 * s11) / two_i,
                (c22 * s11 + c11 * s22 - c21 * s12 - c12 * s21) / two,
                (c11 * s21 - c21 * s11 + c22 * s12 - c12 * s22) / two_i,
            ],
            &[
                (c11 * s11 + c12 * s12 - c21 * s21 - c22 * s22) / two,
                (c11 * s12 + c12 * s11 - c21 * s22 - c22 * s21) / two,
                (c12 * s11 - c11 * s12 + c21 * s22 - c22 * s21) / two_i,
                (c11 * s11 + c22 * s22 - c21 * s21 - c12 * s12) / two,
            ],
        ],
    )
}

/// `(k / |u|) [[i u3, i u1 + u2], [i u1 - u2, -i u3]]`.
fn stereo_block(u: [f64; 3], k: f64) -> [[Complex64; 2]; 2] {
    let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    let f = re(k / n);
    [
        [I * u[2] * f, (I * u[0] + u[1]) * f],
        [(I * u[0] - u[1]) * f, -I * u[2] * f],
    ]
}

fn hat_block(sph: [f64; 3]) -> [[Complex64; 2]; 2] {
    let [_, th, ph] = sph;
    let k = re(std::f64::consts::FRAC_1_SQRT_2);
    [
        [expi((ph + th) / 2.0) * k, -expi((ph - th) / 2.0) * k],
        [expi((th - ph) / 2.0) * k, expi((-th - ph) / 2.0) * k],
    ]
}

fn check_block(sph: [f64; 3]) -> [[Complex64; 2]; 2] {
    let [_, th, ph] = sph;
    let k = im(std::f64::consts::FRAC_1_SQRT_2);
    [
        [-expi((ph - th) / 2.0) * k, expi((ph + th) / 2.0) * k],
        [expi((-th - ph) / 2.0) * k, expi((th - ph) / 2.0) * k],
    ]
}

fn tilde_sph_block(sph: [f64; 3]) -> [[Complex64; 2]; 2] {
    let [_, th, ph] = sph;
    [
        [I * th.cos(), expi(ph) * th.sin()],
        [-expi(-ph) * th.sin(), -I * th.cos()],
    ]
}

fn weyl(b: [[Complex64; 2]; 2]) -> ReferenceTensor {
    ReferenceTensor::matrix(Axis::Spinor2, &[&b[0], &b[1]])
}

/// Spin lift of `Ytilde -> X` in south coordinates.
pub fn lift_s_tilde(y: [f64; 3]) -> ReferenceTensor {
    weyl(stereo_block(y, 1.0))
}

/// Spin lift of `X -> Ytilde` in north coordinates.
pub fn lift_t_tilde(x: [f64; 3]) -> ReferenceTensor {
    weyl(stereo_block(x, -1.0))
}

/// Spin lift of `E -> X`.
pub fn lift_s_hat(sph: [f64; 3]) -> ReferenceTensor {
    weyl(hat_block(sph))
}

/// Spin lift of `E -> Ytilde`.
pub fn lift_s_check(sph: [f64; 3]) -> ReferenceTensor {
    weyl(check_block(sph))
}

/// Spin lift of `Ytilde -> X` in spherical coordinates.
pub fn lift_s_tilde_spherical(sph: [f64; 3]) -> ReferenceTensor {
    weyl(tilde_sph_block(sph))
}

pub fn homomorphism_s_tilde(y: [f64; 3]) -> ReferenceTensor {
    homomorphism(stereo_block(y, 1.0))
}

pub fn homomorphism_s_hat(sph: [f64; 3]) -> ReferenceTensor {
    homomorphism(hat_block(sph))
}

pub fn homomorphism_s_check(sph: [f64; 3]) -> ReferenceTensor {
    homomorphism(check_block(sph))
}

fn pauli(q: usize) -> [[Complex64; 2]; 2] {
    match q {
        0 => [[re(1.0), Z], [Z, re(1.0)]],
        1 => [[Z, re(1.0)], [re(1.0), Z]],
        2 => [[Z, -I], [I, Z]],
        _ => [[re(1.0), Z], [Z, re(-1.0)]],
    }
}

fn infeld_van_der_waerden(spatial_sign: f64) -> ReferenceTensor {
    let mut t = ReferenceTensor::zeros(vec![Axis::Spinor2, Axis::Spinor2, Axis::Spatial]);
    for q in 0..4 {
        let s = if q == 0 { 1.0 } else { spatial_sign };
        let m = pauli(q);
        for i in 0..2 {
            for j in 0..2 {
                t.set(&[i, j, q], m[i][j] * s);
            }
        }
    }
    t
}

/// `G^{i ibar}_q` in a canonically associated Weyl pair.
pub fn g_canonical() -> ReferenceTensor {
    infeld_van_der_waerden(1.0)
}

/// `G^{i ibar}_q` in the pair `(PhiTilde, Y)`.
pub fn g_left() -> ReferenceTensor {
    infeld_van_der_waerden(-1.0)
}

/// Weyl skew metric.
pub fn d_weyl() -> ReferenceTensor {
    ReferenceTensor::matrix(Axis::Spinor2, &[&[Z, re(1.0)], &[re(-1.0), Z]])
}

fn dirac_matrix(rows: [[f64; 4]; 4], sign: f64) -> ReferenceTensor {
    let r: Vec<Vec<Complex64>> = rows.iter().map(|row| row.iter().map(|v| re(sign * v)).collect()).collect();
    let refs: Vec<&[Complex64]> = r.iter().map(Vec::as_slice).collect();
    ReferenceTensor::matrix(Axis::Spinor4, &refs)
}

/// Dirac skew metric of an orthonormal (`sign = 1`) or anti-orthonormal
/// (`sign = -1`) frame.
pub fn d_dirac(sign: f64) -> ReferenceTensor {
    dirac_matrix(
        [
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ],
        sign,
    )
}

/// Chirality operator of a chiral (`1`) or antichiral (`-1`) frame.
pub fn chirality(sign: f64) -> ReferenceTensor {
    dirac_matrix(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ],
        sign,
    )
}

/// Dirac form of a self-adjoint (`1`) or anti-self-adjoint (`-1`) frame.
pub fn dirac_form(sign: f64) -> ReferenceTensor {
    dirac_matrix(
        [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ],
        sign,
    )
}

/// `gamma^a_{bq}` stored as `[a][b][q]`.
pub fn dirac_gamma() -> ReferenceTensor {
    let mats: [[[Complex64; 4]; 4]; 4] = [
        [
            [Z, Z, re(1.0), Z],
            [Z, Z, Z, re(1.0)],
            [re(1.0), Z, Z, Z],
            [Z, re(1.0), Z, Z],
        ],
        [
            [Z, Z, Z, re(1.0)],
            [Z, Z, re(1.0), Z],
            [Z, re(-1.0), Z, Z],
            [re(-1.0), Z, Z, Z],
        ],
        [[Z, Z, Z, -I], [Z, Z, I, Z], [Z, I, Z, Z], [-I, Z, Z, Z]],
        [
            [Z, Z, re(1.0), Z],
            [Z, Z, Z, re(-1.0)],
            [re(-1.0), Z, Z, Z],
            [Z, re(1.0), Z, Z],
        ],
    ];
    let mut t = ReferenceTensor::zeros(vec![Axis::Spinor4, Axis::Spinor4, Axis::Spatial]);
    for (q, m) in mats.iter().enumerate() {
        for a in 0..4 {
            for b in 0..4 {
                t.set(&[a, b, q], m[a][b]);
            }
        }
    }
    t
}

fn block_diagonal(b: [[Complex64; 2]; 2]) -> ReferenceTensor {
    ReferenceTensor::matrix(
        Axis::Spinor4,
        &[
            &[b[0][0], b[0][1], Z, Z],
            &[b[1][0], b[1][1], Z, Z],
            &[Z, Z, b[0][0], b[0][1]],
            &[Z, Z, b[1][0], b[1][1]],
        ],
    )
}

fn block_off_diagonal(b: [[Complex64; 2]; 2]) -> ReferenceTensor {
    ReferenceTensor::matrix(
        Axis::Spinor4,
        &[
            &[Z, Z, b[0][0], b[0][1]],
            &[Z, Z, b[1][0], b[1][1]],
            &[b[0][0], b[0][1], Z, Z],
            &[b[1][0], b[1][1], Z, Z],
        ],
    )
}

/// Dirac `PhiTilde -> Psi` transition in south coordinates.
pub fn dirac_s_tilde(y: [f64; 3]) -> ReferenceTensor {
    block_diagonal(stereo_block(y, 1.0))
}

/// Dirac `Psi -> PhiTilde` transition in north coordinates, printed without
/// the overall minus of the Weyl lift it extends.
pub fn dirac_t_tilde(x: [f64; 3]) -> ReferenceTensor {
    let mut t = block_diagonal(stereo_block(x, 1.0));
    for a in 0..4 {
        for b in 0..4 {
            let v = t.get(&[a, b]);
            if v != Z {
                t.flag(&[a, b], -v, "overall minus of the Weyl lift dropped in the extension");
            }
        }
    }
    t
}

/// Dirac `Phi -> Psi` transition.
pub fn dirac_s(y: [f64; 3]) -> ReferenceTensor {
    block_off_diagonal(stereo_block(y, 1.0))
}

/// Dirac `Psi -> Phi` transition.
pub fn dirac_t(x: [f64; 3]) -> ReferenceTensor {
    block_off_diagonal(stereo_block(x, -1.0))
}

/// Dirac `Xi -> Psi` transition.
pub fn dirac_s_hat(sph: [f64; 3]) -> ReferenceTensor {
    block_diagonal(hat_block(sph))
}

/// Dirac `Xi -> PhiTilde` transition.
pub fn dirac_s_check(sph: [f64; 3]) -> ReferenceTensor {
    block_diagonal(check_block(sph))
}

/// Dirac `PhiTilde -> Psi` transition in spherical coordinates.
pub fn dirac_s_tilde_spherical(sph: [f64; 3]) -> ReferenceTensor {
    block_diagonal(tilde_sph_block(sph))
}

/// Dirac `Xi -> Phi` transition.
pub fn dirac_s_check_phi(sph: [f64; 3]) -> ReferenceTensor {
    block_off_diagonal(check_block(sph))
}

/// `Gamma^k_ij` of a stereographic frame in its own coordinates.
pub fn gamma_stereo(u: [f64; 3], jet: &RadiusJet) -> ReferenceTensor {
    let (r, r2) = (jet.r, jet.r * jet.r);
    let h = re(jet.dr / r2);
    let mut t = ReferenceTensor::zeros(vec![Axis::Spatial; 3]);
    for a in 1..4 {
        t.set(&[0, a, a], h);
        t.set(&[a, a, 0], h);
    }
    let [u1, u2, u3] = u;
    // (k, i, j, printed numerator, corrected numerator)
    let rows = [
        (1, 2, 2, u1, u1),
        (2, 3, 3, u2, u2),
        (3, 1, 1, u3, u3),
        (2, 1, 1, u2, u2),
        (3, 2, 2, u3, u3),
        (1, 3, 3, u1, u1),
        (1, 1, 2, -u2, -u2),
        (2, 2, 3, -u3, -u3),
        (3, 3, 1, -u1, -u1),
        (2, 2, 1, -u1, -u1),
        (3, 3, 2, -u2, -u2),
        (1, 1, 3, -u2, -u3),
    ];
    for (k, i, j, printed, fixed) in rows {
        t.set(&[k, i, j], re(printed / r2));
        let note = if printed != fixed {
            "printed with the second coordinate where the index pattern needs the third, and with R^2"
        } else {
            DIMENSION_NOTE
        };
        t.flag(&[k, i, j], re(fixed / r), note);
    }
    t
}

/// `Gamma^k_ij` of the spherical frame.
pub fn gamma_spherical(sph: [f64; 3], jet: &RadiusJet) -> ReferenceTensor {
    let [chi, theta, _] = sph;
    let r = jet.r;
    let h = re(jet.dr / (r * r));
    let mut t = ReferenceTensor::zeros(vec![Axis::Spatial; 3]);
    for a in 1..4 {
        t.set(&[0, a, a], h);
        t.set(&[a, a, 0], h);
    }
    let cc = chi.cos() / (r * chi.sin());
    let ct = theta.cos() / (r * chi.sin() * theta.sin());
    t.set(&[1, 2, 2], re(-cc));
    t.set(&[2, 3, 3], re(-ct));
    t.set(&[2, 2, 1], re(cc));
    t.set(&[1, 3, 3], re(-cc));
    t.set(&[3, 3, 2], re(ct));
    t.set(&[3, 3, 1], re(cc));
    t
}

fn spinor_connection() -> ReferenceTensor {
    ReferenceTensor::zeros(vec![Axis::Spinor4, Axis::Spatial, Axis::Spinor4])
}

/// `A^a_ib` stored as `[a][i][b]` for a stereographic pair, with spinor
/// indices counted from zero.
pub fn a_stereo(u: [f64; 3], jet: &RadiusJet) -> ReferenceTensor {
    let r = jet.r;
    let p = jet.dr / (2.0 * r * r);
    let [u1, u2, u3] = u;
    let (h1, h2, h3) = (u1 / (2.0 * r), u2 / (2.0 * r), u3 / (2.0 * r));
    let mut t = spinor_connection();
    // printed as A^a_{ib}: (a, i, b) with spinor indices from one
    let entries = [
        (1, 1, 1, im(-h2)),
        (1, 2, 1, im(h1)),
        (1, 3, 1, re(p)),
        (2, 1, 2, im(h2)),
        (2, 2, 2, im(-h1)),
        (2, 3, 2, re(-p)),
        (3, 1, 3, im(-h2)),
        (3, 2, 3, im(h1)),
        (3, 3, 3, re(-p)),
        (4, 1, 4, im(h2)),
        (4, 2, 4, im(-h1)),
        (4, 3, 4, re(p)),
        (1, 1, 2, re(p + h3)),
        (2, 1, 1, re(2.0 * p - h3)),
        (3, 1, 4, re(-p + h3)),
        (4, 1, 3, re(-p - h3)),
        (1, 2, 2, im(-p - h3)),
        (2, 2, 1, im(p - h3)),
        (3, 2, 4, im(p - h3)),
        (4, 2, 3, im(-p - h3)),
        (1, 3, 2, Complex64::new(-h1, h2)),
        (2, 3, 1, Complex64::new(h1, h2)),
        (3, 3, 4, Complex64::new(-h1, h2)),
        (4, 3, 3, Complex64::new(h1, h2)),
    ];
    for (a, i, b, v) in entries {
        t.set(&[a - 1, i, b - 1], v);
    }
    t.flag(&[1, 1, 0], re(p - h3), "time-derivative term printed without the factor one half");
    t
}

/// `A^a_ib` for the spherical pair.
pub fn a_spherical(sph: [f64; 3], jet: &RadiusJet) -> ReferenceTensor {
    let [chi, theta, _] = sph;
    let r = jet.r;
    let p = jet.dr / (2.0 * r * r);
    let cc = chi.cos() / (2.0 * r * chi.sin());
    let ct = theta.cos() / (2.0 * r * chi.sin() * theta.sin());
    let mut t = spinor_connection();
    let entries = [
        (1, 1, 2, re(p)),
        (2, 1, 1, re(p)),
        (3, 1, 4, re(-p)),
        (4, 1, 3, re(-p)),
        (1, 2, 1, im(-cc)),
        (2, 2, 2, im(cc)),
        (3, 2, 3, im(-cc)),
        (4, 2, 4, im(cc)),
        (1, 2, 2, im(-p)),
        (2, 2, 1, im(p)),
        (3, 2, 4, im(p)),
        (4, 2, 3, im(-p)),
        (1, 3, 1, re(p)),
        (2, 3, 2, re(-p)),
        (3, 3, 3, re(-p)),
        (4, 3, 4, re(p)),
        (1, 3, 2, Complex64::new(cc, -ct)),
        (2, 3, 1, Complex64::new(-cc, -ct)),
        (3, 3, 4, Complex64::new(cc, -ct)),
        (4, 3, 3, Complex64::new(-cc, -ct)),
    ];
    for (a, i, b, v) in entries {
        t.set(&[a - 1, i, b - 1], v);
    }
    t
}

/// `R^p_qij`, identical in every frame pair.
pub fn riemann(jet: &RadiusJet) -> ReferenceTensor {
    let (r, d, dd) = (jet.r, jet.dr, jet.ddr);
    let time = re(-d * d / r.powi(4) + dd / r.powi(3));
    let q = re(1.0 / (r * r) + d * d / r.powi(4));
    let mut t = ReferenceTensor::zeros(vec![Axis::Spatial; 4]);
    for a in 1..4 {
        t.anti(&[0, a], 0, a, time);
        t.anti(&[a, 0], 0, a, time);
    }
    t.anti(&[1, 2], 1, 2, q);
    t.anti(&[2, 1], 1, 2, -q);
    // printed "R^2_323 = -R^2_333": the partner label repeats the index
    t.set(&[2, 3, 2, 3], q);
    t.set(&[2, 3, 3, 3], -q);
    t.anti(&[3, 2], 2, 3, -q);
    t.anti(&[3, 1], 3, 1, q);
    t.anti(&[1, 3], 3, 1, -q);
    let note = "antisymmetric partner printed with a repeated index";
    t.flag(&[2, 3, 3, 3], Z, note);
    t.flag(&[2, 3, 3, 2], -q, note);
    t
}

/// Spinor curvature `[p][q][i][j]`, spinor indices counted from zero.
pub fn spinor_curvature(jet: &RadiusJet) -> ReferenceTensor {
    let (r, d, dd) = (jet.r, jet.dr, jet.ddr);
    let k = -d * d / (2.0 * r.powi(4)) + dd / (2.0 * r.powi(3));
    let p = 1.0 / (2.0 * r * r) + d * d / (2.0 * r.powi(4));
    let mut t = ReferenceTensor::zeros(vec![Axis::Spinor4, Axis::Spinor4, Axis::Spatial, Axis::Spatial]);
    // printed as R^p_{q i j} = -R^p_{q j i}, spinor indices from one
    let entries = [
        (1, 2, 0, 1, re(k)),
        (2, 1, 0, 1, re(k)),
        (3, 4, 0, 1, re(-k)),
        (4, 3, 0, 1, re(k)),
        (1, 2, 0, 2, im(-k)),
        (2, 1, 0, 2, im(k)),
        (3, 4, 0, 2, im(k)),
        (4, 3, 0, 2, im(-k)),
        (1, 1, 0, 3, re(k)),
        (2, 2, 0, 3, re(-k)),
        (3, 3, 0, 3, re(-k)),
        (4, 4, 0, 3, re(k)),
        (1, 1, 1, 2, im(p)),
        (2, 2, 1, 2, im(-p)),
        (3, 3, 1, 2, im(p)),
        (4, 4, 1, 2, im(-p)),
        (1, 2, 2, 3, im(p)),
        (2, 1, 2, 3, im(p)),
        (3, 4, 2, 3, im(p)),
        (4, 3, 2, 3, im(p)),
        (1, 2, 3, 1, re(p)),
        (3, 4, 3, 1, re(p)),
    ];
    for (a, b, i, j, v) in entries {
        t.anti(&[a - 1, b - 1], i, j, v);
    }
    // "R^2_131 = -R^2_131" and "R^4_331 = -R^4_331": only the first label
    // carries information
    t.set(&[1, 0, 3, 1], re(-p));
    t.set(&[3, 2, 3, 1], re(-p));
    let partner = "antisymmetric partner printed with the same index order";
    t.flag(&[1, 0, 1, 3], re(p), partner);
    t.flag(&[3, 2, 1, 3], re(p), partner);
    let sign = "sign opposite to the chirality pattern of its block";
    t.flag(&[3, 2, 0, 1], re(-k), sign);
    t.flag(&[3, 2, 1, 0], re(k), sign);
    t
}

/// Ricci tensor.
pub fn ricci(jet: &RadiusJet) -> ReferenceTensor {
    let (r, d, dd) = (jet.r, jet.dr, jet.ddr);
    let mut t = ReferenceTensor::zeros(vec![Axis::Spatial; 2]);
    t.set(&[0, 0], re(3.0 * d * d / r.powi(4) - 3.0 * dd / r.powi(3)));
    for a in 1..4 {
        t.set(&[a, a], re(2.0 / (r * r) + d * d / r.powi(4) + dd / r.powi(3)));
    }
    t
}

/// Scalar curvature as a rank-zero table.
pub fn scalar(jet: &RadiusJet) -> ReferenceTensor {
    let mut t = ReferenceTensor::zeros(vec![]);
    t.values[0] = re(-6.0 / (jet.r * jet.r) - 6.0 * jet.ddr / jet.r.powi(3));
    t
}
