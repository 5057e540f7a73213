//! Seeded random-matrix generators.
//!
//! Streams are keyed, not sequential: [`stream_seed`] hashes
//! `(campaign seed, suite, size, trial)` with SplitMix64 finalisers into a
//! 64-bit key that seeds an independent ChaCha8 generator. Any trial can be
//! regenerated on its own, on any thread.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::kernel::{c64, Matrix};

pub type TrialRng = ChaCha8Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a of the label, so suite names map to stable 64-bit tags.
fn label_hash(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Stream key for one trial: a SplitMix64 chain over
/// `seed → label → size → trial`.
pub fn stream_seed(seed: u64, label: &str, size: usize, trial: usize) -> u64 {
    let mut h = splitmix(seed);
    h = splitmix(h ^ label_hash(label));
    h = splitmix(h ^ size as u64);
    splitmix(h ^ trial as u64)
}

pub fn rng_from_seed(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    // column-major fill order, fixed so streams stay reproducible
    let data: Vec<Complex64> = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    DMatrix::from_vec(rows, cols, data)
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::out_of_range("n", "matrix size must be at least 1"))
    } else {
        Ok(())
    }
}

pub fn gen_ginibre(n: usize, seed: u64) -> Result<Matrix> {
    check_size(n)?;
    Ok(ginibre(&mut rng_from_seed(seed), n, n))
}

/// `(g + g*)/2`, shrunk to operator norm `norm_cap` when larger.
pub fn hermitian_with<R: Rng + ?Sized>(rng: &mut R, n: usize, norm_cap: f64) -> Matrix {
    let g = ginibre(rng, n, n);
    let mut h = Matrix::from_fn(n, n, |i, j| (g[(i, j)] + g[(j, i)].conj()) * 0.5);
    // exact symmetry at entry level
    for i in 0..n {
        h[(i, i)] = c64(h[(i, i)].re, 0.0);
        for j in 0..i {
            h[(i, j)] = h[(j, i)].conj();
        }
    }
    let norm = crate::kernel::op_norm(&h).expect("finite Gaussian matrix");
    if norm > norm_cap {
        h *= c64(norm_cap / norm, 0.0);
        for i in 0..n {
            for j in 0..i {
                h[(i, j)] = h[(j, i)].conj();
            }
        }
    }
    h
}

pub fn gen_hermitian(n: usize, seed: u64, norm_cap: f64) -> Result<Matrix> {
    check_size(n)?;
    if !(norm_cap > 0.0) {
        return Err(Error::out_of_range("norm_cap", format!("{norm_cap} must be positive")));
    }
    Ok(hermitian_with(&mut rng_from_seed(seed), n, norm_cap))
}

/// Gram matrix `g·g*`. With `allow_singular`, a random non-empty subset of
/// the columns of `g` is zeroed first; for `n ≥ 2` at least one column
/// survives, so the result is singular but nonzero.
pub fn psd_with<R: Rng + ?Sized>(rng: &mut R, n: usize, allow_singular: bool) -> Matrix {
    let mut g = ginibre(rng, n, n);
    if allow_singular {
        let zeroed = if n == 1 { 1 } else { rng.random_range(1..n) };
        let mut cols: Vec<usize> = (0..n).collect();
        for i in 0..zeroed {
            let j = rng.random_range(i..n);
            cols.swap(i, j);
            g.column_mut(cols[i]).fill(c64(0.0, 0.0));
        }
    }
    let mut b = &g * g.adjoint();
    for i in 0..n {
        b[(i, i)] = c64(b[(i, i)].re, 0.0);
        for j in 0..i {
            b[(i, j)] = b[(j, i)].conj();
        }
    }
    b
}

pub fn gen_psd(n: usize, seed: u64, allow_singular: bool) -> Result<Matrix> {
    check_size(n)?;
    Ok(psd_with(&mut rng_from_seed(seed), n, allow_singular))
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let qr = ginibre(rng, n, n).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c64(1.0, 0.0) };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    q
}

/// Short hex digest of a matrix (shape and entry bits), used to tag
/// report inputs.
pub fn digest(matrices: &[&Matrix]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    for m in matrices {
        hasher.update((m.nrows() as u64).to_le_bytes());
        hasher.update((m.ncols() as u64).to_le_bytes());
        for z in m.iter() {
            hasher.update(z.re.to_bits().to_le_bytes());
            hasher.update(z.im.to_bits().to_le_bytes());
        }
    }
    hasher.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}
