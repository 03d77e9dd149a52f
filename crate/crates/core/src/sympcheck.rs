//! Exact checks on the symplectic matrices and embeddings behind the
//! pullbacks: paramodular membership, Moebius actions at exact points, and the
//! homomorphism and intertwining properties of the embeddings.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numeric::{int, rat, Complex, Field, QuadRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SympError {
    #[error("C Z + D is singular at the sample point")]
    Singular,
    #[error("the image point is not symmetric")]
    NotSymmetric,
    #[error("{0}")]
    Precondition(String),
}

/// A 4x4 rational matrix `((A, B), (C, D))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat4(pub [[Rational; 4]; 4]);

/// A 2x2 integer matrix, used for `SL2(Z)` elements.
pub type Sl2 = [[i64; 2]; 2];

impl Mat4 {
    pub fn from_fn(f: impl Fn(usize, usize) -> Rational) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn from_ints(m: [[i64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| int(m[i][j]))
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// `[[0, I], [-I, 0]]`.
    pub fn j() -> Self {
        Self::from_fn(|i, j| match (i, j) {
            (0, 2) | (1, 3) => Rational::one(),
            (2, 0) | (3, 1) => -Rational::one(),
            _ => Rational::zero(),
        })
    }

    /// `[[a, b], [c, d]]` from 2x2 blocks.
    pub fn from_blocks(blocks: [[[[Rational; 2]; 2]; 2]; 2]) -> Self {
        Self::from_fn(|i, j| blocks[i / 2][j / 2][i % 2][j % 2].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| (0..4).map(|k| &self.0[i][k] * &o.0[k][j]).sum())
    }

    fn block(&self, r: usize, c: usize) -> [[Rational; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[2 * r + i][2 * c + j].clone()))
    }

    /// `M^T J M = J`.
    pub fn is_symplectic(&self) -> bool {
        self.transpose().mul(&Self::j()).mul(self) == Self::j()
    }

    /// Symplectic with `sigma^-1 M sigma` integral, `sigma = diag(1, 1, 1, N)`.
    pub fn in_paramodular(&self, n: i64) -> bool {
        let s = |i: usize| if i == 3 { int(n) } else { Rational::one() };
        self.is_symplectic() && (0..4).all(|i| (0..4).all(|j| (&self.0[i][j] * s(j) / s(i)).is_integer()))
    }

    /// `R_u = diag(u, u^{-T})` for an invertible integer `u`.
    pub fn conjugation(u: Sl2) -> Self {
        let det = int(u[0][0] * u[1][1] - u[0][1] * u[1][0]);
        let a = u.map(|r| r.map(int));
        // (u^{-1})^T = [[d, -c], [-b, a]] / det
        let d = [[int(u[1][1]), int(-u[1][0])], [int(-u[0][1]), int(u[0][0])]].map(|r| r.map(|x| x / &det));
        let z = || [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]];
        Self::from_blocks([[a, z()], [z(), d]])
    }

    /// Translation by the symmetric matrix `b`.
    pub fn translation(b: [[Rational; 2]; 2]) -> Self {
        let id = [[Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]];
        let z = [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]];
        Self::from_blocks([[id.clone(), b], [z, id]])
    }
}

/// `((tau, z), (z, w))` with complex entries over `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpacePoint<F> {
    pub tau: Complex<F>,
    pub z: Complex<F>,
    pub w: Complex<F>,
}

type Cm2<F> = [[Complex<F>; 2]; 2];

fn cm_mul<F: Field>(a: &Cm2<F>, b: &Cm2<F>) -> Cm2<F> {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
}

fn cm_inv<F: Field>(m: &Cm2<F>) -> Option<Cm2<F>> {
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    let inv = det.inv()?;
    Some([[&m[1][1] * &inv, -&(&m[0][1] * &inv)], [-&(&m[1][0] * &inv), &m[0][0] * &inv]])
}

impl<F: Field> HalfSpacePoint<F> {
    pub fn new(tau: Complex<F>, z: Complex<F>, w: Complex<F>) -> Self {
        Self { tau, z, w }
    }

    fn matrix(&self) -> Cm2<F> {
        [[self.tau.clone(), self.z.clone()], [self.z.clone(), self.w.clone()]]
    }

    /// Imaginary part positive definite.
    pub fn in_half_space(&self) -> bool {
        let det = self.tau.im.fmul(&self.w.im).fsub(&self.z.im.fmul(&self.z.im));
        self.tau.im.fis_positive() && det.fis_positive()
    }

    /// `(Nw, -z, tau/N)`.
    pub fn fricke(&self, n: i64) -> Self {
        let nn = int(n);
        Self { tau: self.w.scale(&nn), z: -&self.z, w: self.tau.scale(&nn.recip()) }
    }
}

/// `(A Z + B)(C Z + D)^{-1}`.
pub fn moebius_act<F: Field>(m: &Mat4, p: &HalfSpacePoint<F>) -> Result<HalfSpacePoint<F>, SympError> {
    let like = p.tau.re.clone();
    let lift = |b: [[Rational; 2]; 2]| -> Cm2<F> { b.map(|r| r.map(|x| Complex::embed(&like, &x))) };
    let (a, b, c, d) = (lift(m.block(0, 0)), lift(m.block(0, 1)), lift(m.block(1, 0)), lift(m.block(1, 1)));
    let z = p.matrix();
    let add = |x: Cm2<F>, y: &Cm2<F>| -> Cm2<F> { std::array::from_fn(|i| std::array::from_fn(|j| &x[i][j] + &y[i][j])) };
    let num = add(cm_mul(&a, &z), &b);
    let den = add(cm_mul(&c, &z), &d);
    let out = cm_mul(&num, &cm_inv(&den).ok_or(SympError::Singular)?);
    if out[0][1] != out[1][0] {
        return Err(SympError::NotSymmetric);
    }
    let [[tau, z], [_, w]] = out;
    Ok(HalfSpacePoint { tau, z, w })
}

/// `M tau` for `M` in `SL2(Z)`.
pub fn sl2_act<F: Field>(m: Sl2, tau: &Complex<F>) -> Complex<F> {
    let e = |x: i64| Complex::embed(&tau.re, &int(x));
    let num = &(&e(m[0][0]) * tau) + &e(m[0][1]);
    let den = &(&e(m[1][0]) * tau) + &e(m[1][1]);
    num.checked_div(&den).expect("c tau + d is nonzero in the upper half-plane")
}

pub fn sl2_mul(a: Sl2, b: Sl2) -> Sl2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

const S: Sl2 = [[0, -1], [1, 0]];
const T: Sl2 = [[1, 1], [0, 1]];
const T_INV: Sl2 = [[1, -1], [0, 1]];
const S_INV: Sl2 = [[0, 1], [-1, 0]];

/// A word of `len` letters in `S, T, T^-1`.
pub fn random_sl2(rng: &mut impl Rng, len: usize) -> Sl2 {
    (0..len).fold([[1, 0], [0, 1]], |acc, _| sl2_mul(acc, [S, T, T_INV][rng.random_range(0..3)]))
}

/// A word in `T^2, S T^2 S^-1` and their inverses: an element of `Gamma(2)`.
pub fn random_gamma2(rng: &mut impl Rng, len: usize) -> Sl2 {
    let t2 = sl2_mul(T, T);
    let t2i = sl2_mul(T_INV, T_INV);
    let letters = [t2, t2i, sl2_mul(sl2_mul(S, t2), S_INV), sl2_mul(sl2_mul(S, t2i), S_INV)];
    (0..len).fold([[1, 0], [0, 1]], |acc, _| sl2_mul(acc, letters[rng.random_range(0..4)]))
}

/// `(M1, M2) -> ((a1, 0, b1, 0), (0, a2, 0, b2/N), (c1, 0, d1, 0), (0, N c2, 0, d2))`.
pub fn phi1(m1: Sl2, m2: Sl2, n: i64) -> Mat4 {
    let [[a1, b1], [c1, d1]] = m1;
    let [[a2, b2], [c2, d2]] = m2;
    let z = Rational::zero;
    Mat4([
        [int(a1), z(), int(b1), z()],
        [z(), int(a2), z(), rat(b2, n)],
        [int(c1), z(), int(d1), z()],
        [z(), int(n * c2), z(), int(d2)],
    ])
}

/// The embedding of `{M1 = M2 mod 2}` into `K(N)` for odd `N`.
pub fn phi4(m1: Sl2, m2: Sl2, n: i64) -> Result<Mat4, SympError> {
    if n % 2 == 0 {
        return Err(SympError::Precondition(format!("level {n} is even")));
    }
    if (0..2).any(|i| (0..2).any(|j| (m1[i][j] - m2[i][j]).rem_euclid(2) != 0)) {
        return Err(SympError::Precondition("M1 and M2 differ mod 2".into()));
    }
    let [[a1, b1], [c1, d1]] = m1;
    let [[a2, b2], [c2, d2]] = m2;
    Ok(Mat4([
        [int(a1), int(0), int(2 * b1), int(b1)],
        [rat(a1 - a2, 2), int(a2), int(b1), rat(b2 + n * b1, 2 * n)],
        [rat(c1 + n * c2, 2), int(-n * c2), int(d1), rat(d1 - d2, 2)],
        [int(-n * c2), int(2 * n * c2), int(0), int(d2)],
    ]))
}

/// `((2 t1, t1), (t1, t1/2 + t2/2N))`.
pub fn p4_point<F: Field>(t1: &Complex<F>, t2: &Complex<F>, n: i64) -> HalfSpacePoint<F> {
    let w = &t1.scale(&rat(1, 2)) + &t2.scale(&rat(1, 2 * n));
    HalfSpacePoint::new(t1.scale(&int(2)), t1.clone(), w)
}

/// `diag(t1, t2/N)`.
pub fn p1_point<F: Field>(t1: &Complex<F>, t2: &Complex<F>, n: i64) -> HalfSpacePoint<F> {
    HalfSpacePoint::new(t1.clone(), t1.zero_like(), t2.scale(&rat(1, n)))
}

/// Both embeddings of `lambda` in `Q(sqrt D)`, applied to `t1` and `t2`.
fn quad_mix(lambda: &QuadRational, t1: &Complex<QuadRational>, t2: &Complex<QuadRational>) -> Complex<QuadRational> {
    let l = Complex::from_real(lambda.clone());
    let lc = Complex::from_real(lambda.conjugate());
    &(&l * t1) + &(&lc * t2)
}

/// The level-5 Humbert point `((t1 + t2, l t1 + l' t2), (., l^2 t1 + l'^2 t2))`, `l = (5 - sqrt 5)/10`.
pub fn h5_point(t1: &Complex<QuadRational>, t2: &Complex<QuadRational>) -> HalfSpacePoint<QuadRational> {
    let lambda = QuadRational::new(rat(1, 2), rat(-1, 10), 5).expect("valid");
    let one = QuadRational::from_rational(Rational::one(), 5).expect("valid");
    let sq = lambda.try_mul(&lambda).expect("same field");
    HalfSpacePoint::new(quad_mix(&one, t1, t2), quad_mix(&lambda, t1, t2), quad_mix(&sq, t1, t2))
}

/// The level-7 point `((l t1 + l' t2, (t1 + t2)/2), (., (2/7)(l' t1 + l t2)))`, `l = 1 - sqrt 2/4`.
pub fn h8_point(t1: &Complex<QuadRational>, t2: &Complex<QuadRational>) -> HalfSpacePoint<QuadRational> {
    let lambda = QuadRational::new(int(1), rat(-1, 4), 2).expect("valid");
    let half = QuadRational::from_rational(rat(1, 2), 2).expect("valid");
    let w = quad_mix(&lambda.conjugate(), t1, t2).scale(&rat(2, 7));
    HalfSpacePoint::new(quad_mix(&lambda, t1, t2), quad_mix(&half, t1, t2), w)
}

/// The matrix sending the level-5 Humbert point at `(t1, t2)` to the one at `(-1/t1, -1/t2)`.
pub fn p5_matrix() -> Mat4 {
    Mat4([
        [int(0), int(0), int(2), int(1)],
        [int(0), int(0), int(1), rat(3, 5)],
        [int(-3), int(5), int(0), int(0)],
        [int(5), int(-10), int(0), int(0)],
    ])
}

/// The level-7 analogue of [`p5_matrix`].
pub fn p8_matrix() -> Mat4 {
    Mat4([
        [int(0), int(0), int(2), int(1)],
        [int(0), int(0), int(1), rat(4, 7)],
        [int(-4), int(7), int(0), int(0)],
        [int(7), int(-14), int(0), int(0)],
    ])
}

/// `U = diag(u, u^{-T})` with `u = (2, N; 1, (N+1)/2)`.
pub fn fricke_conjugator(n: i64) -> Mat4 {
    Mat4::conjugation([[2, n], [1, (n + 1) / 2]])
}

/// One check with a witness for failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub witness: String,
}

impl Check {
    fn new(id: impl Into<String>, passed: bool, witness: impl Into<String>) -> Self {
        Self { id: id.into(), passed, witness: if passed { String::new() } else { witness.into() } }
    }
}

/// Exact sample points in the upper half-plane.
pub fn sample_taus() -> Vec<Complex<Rational>> {
    [((0, 1), (1, 1)), ((0, 1), (2, 1)), ((1, 1), (1, 1)), ((-1, 2), (3, 2)), ((1, 3), (1, 5)), ((2, 7), (5, 3))]
        .into_iter()
        .map(|((a, b), (c, d))| Complex::new(rat(a, b), rat(c, d)))
        .collect()
}

fn in_quad(t: &Complex<Rational>, disc: u32) -> Complex<QuadRational> {
    let q = |r: &Rational| QuadRational::from_rational(r.clone(), disc).expect("valid discriminant");
    Complex::new(q(&t.re), q(&t.im))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    Phi1,
    Phi4,
}

/// Membership, homomorphism and intertwining for `pairs` seeded random pairs.
pub fn verify_embedding(which: Embedding, n: i64, pairs: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let taus = sample_taus();
    let mut out = Vec::new();
    let gen_pair = |rng: &mut ChaCha8Rng| {
        let m1 = random_sl2(rng, 6);
        let m2 = match which {
            Embedding::Phi1 => random_sl2(rng, 6),
            Embedding::Phi4 => sl2_mul(m1, random_gamma2(rng, 3)),
        };
        (m1, m2)
    };
    let embed = |m1: Sl2, m2: Sl2| match which {
        Embedding::Phi1 => Ok(phi1(m1, m2, n)),
        Embedding::Phi4 => phi4(m1, m2, n),
    };
    let point = |t1: &Complex<Rational>, t2: &Complex<Rational>| match which {
        Embedding::Phi1 => p1_point(t1, t2, n),
        Embedding::Phi4 => p4_point(t1, t2, n),
    };
    let mut prev: Option<(Sl2, Sl2, Mat4)> = None;
    for i in 0..pairs {
        let (m1, m2) = gen_pair(&mut rng);
        let tag = format!("{which:?}/N={n}/pair {i}");
        let img = match embed(m1, m2) {
            Ok(m) => m,
            Err(e) => {
                out.push(Check::new(format!("{tag}/embed"), false, e.to_string()));
                continue;
            }
        };
        out.push(Check::new(format!("{tag}/in K(N)"), img.in_paramodular(n), format!("{m1:?} {m2:?} -> {img:?}")));
        if let Some((p1, p2, pimg)) = &prev {
            let prod = embed(sl2_mul(*p1, m1), sl2_mul(*p2, m2)).map(|m| m == pimg.mul(&img));
            out.push(Check::new(format!("{tag}/homomorphism"), prod == Ok(true), format!("{p1:?}{p2:?} * {m1:?}{m2:?}")));
        }
        let (t1, t2) = (&taus[i % taus.len()], &taus[(i + 1) % taus.len()]);
        let lhs = moebius_act(&img, &point(t1, t2));
        let rhs = point(&sl2_act(m1, t1), &sl2_act(m2, t2));
        out.push(Check::new(format!("{tag}/intertwining"), lhs.as_ref() == Ok(&rhs), format!("{lhs:?} vs {rhs:?}")));
        prev = Some((m1, m2, img));
    }
    out
}

/// `U V_N X(t1, t2) = X(t2, t1)` on the P4-shape points.
pub fn verify_fricke_swap(n: i64) -> Vec<Check> {
    let u = fricke_conjugator(n);
    let taus = sample_taus();
    let mut out = vec![Check::new(format!("U in K({n})"), u.in_paramodular(n), format!("{u:?}"))];
    for (i, t1) in taus.iter().enumerate() {
        let t2 = &taus[(i + 2) % taus.len()];
        let lhs = moebius_act(&u, &p4_point(t1, t2, n).fricke(n));
        let rhs = p4_point(t2, t1, n);
        out.push(Check::new(format!("U V_{n} swap/sample {i}"), lhs.as_ref() == Ok(&rhs), format!("{lhs:?} vs {rhs:?}")));
    }
    out
}

/// Sample pairs for the H5 checks.
pub fn h5_samples() -> Vec<(Complex<Rational>, Complex<Rational>)> {
    let t = sample_taus();
    let mut v = vec![(t[0].clone(), t[1].clone()), (t[2].clone(), t[0].clone())];
    v.extend((2..t.len()).map(|i| (t[i].clone(), t[(i + 1) % t.len()].clone())));
    v
}

/// The conjugation `R_u`, `u = (2, -5; -1, 2)`.
pub fn r_u() -> Mat4 {
    Mat4::conjugation([[2, -5], [-1, 2]])
}

/// The composite of `R_u` and `V_5` fixes the level-5 Humbert points, `R_u` alone does not.
///
/// `R_u` sends the point to its `V_5` image, so the fixing composite applies
/// `R_u` first and `V_5` second. Applying `V_5` first does not fix the point.
pub fn verify_h5_fixing() -> Vec<Check> {
    let r = r_u();
    let mut out = vec![Check::new("R_u in K(5)", r.in_paramodular(5), format!("{r:?}"))];
    for (i, (t1, t2)) in h5_samples().iter().enumerate() {
        let y = h5_point(&in_quad(t1, 5), &in_quad(t2, 5));
        let fixed = moebius_act(&r, &y).map(|p| p.fricke(5));
        out.push(Check::new(format!("V_5 R_u fixes H5/sample {i}"), fixed.as_ref() == Ok(&y), format!("{fixed:?}")));
        let moved = moebius_act(&r, &y);
        out.push(Check::new(format!("R_u alone moves H5/sample {i}"), moved.as_ref() != Ok(&y), "R_u fixed the point"));
    }
    out
}

/// The P5 and P8 matrices lie in `K(5)`, `K(7)` and act as `(t1, t2) -> (-1/t1, -1/t2)`.
pub fn verify_hilbert_inversions() -> Vec<Check> {
    let mut out = vec![
        Check::new("P5 matrix in K(5)", p5_matrix().in_paramodular(5), format!("{:?}", p5_matrix())),
        Check::new("P8 matrix in K(7)", p8_matrix().in_paramodular(7), format!("{:?}", p8_matrix())),
    ];
    let inv = |t: &Complex<QuadRational>| -&t.inv().expect("nonzero");
    for (i, t1) in sample_taus().iter().enumerate() {
        let t2 = &sample_taus()[(i + 3) % 6];
        let (a, b) = (in_quad(t1, 5), in_quad(t2, 5));
        let got = moebius_act(&p5_matrix(), &h5_point(&a, &b));
        let want = h5_point(&inv(&a), &inv(&b));
        out.push(Check::new(format!("P5 inversion/sample {i}"), got.as_ref() == Ok(&want), format!("{got:?}")));
        let (a, b) = (in_quad(t1, 2), in_quad(t2, 2));
        let got = moebius_act(&p8_matrix(), &h8_point(&a, &b));
        let want = h8_point(&inv(&a), &inv(&b));
        out.push(Check::new(format!("P8 inversion/sample {i}"), got.as_ref() == Ok(&want), format!("{got:?}")));
    }
    out
}

/// Every fixed matrix used by the pullbacks, with the level it should lie in.
pub fn fixed_matrices() -> Vec<(String, Mat4, i64)> {
    let mut v = vec![
        ("Phi1(T, S) at N=5".to_string(), phi1(T, S, 5), 5),
        ("Phi4(T^2, S T^2 S^-1) at N=5".to_string(), phi4(sl2_mul(T, T), sl2_mul(sl2_mul(S, sl2_mul(T, T)), S_INV), 5).expect("congruent"), 5),
        ("P5 matrix".to_string(), p5_matrix(), 5),
        ("P8 matrix".to_string(), p8_matrix(), 7),
        ("U at N=5".to_string(), fricke_conjugator(5), 5),
        ("U at N=7".to_string(), fricke_conjugator(7), 7),
        ("R_u".to_string(), r_u(), 5),
    ];
    for n in [5, 7] {
        let b = [[int(1), int(-2)], [int(-2), rat(3, n)]];
        v.push((format!("T_b at N={n}"), Mat4::translation(b), n));
    }
    v
}
