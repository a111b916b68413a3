//! Exact Sturm sequences for the tridiagonal parts `T^{(j)}`.
//!
//! For odd `j = 2p − 1` the leading principal minors of `T^{(j)}` at zero are
//! `Δ_k = γ_{p,k} u_k` with
//!
//! ```text
//! u_0 = 1, u_1 = 2p − 5, u_{k+2} = (2p − 5) u_{k+1} − (k+1)(2p − k − 1) u_k
//! γ_{p,k} = 8^{−k} ∏_{i<k} i! ∏_{i=1..k} (2p − i)!
//! ```
//!
//! and for even `j = 2q`, `Δ_k = γ'_{q,k} v_k` with
//!
//! ```text
//! v_0 = 1, v_1 = 2q − 4, v_{k+2} = (2q − 4) v_{k+1} − (k+1)(2q − k) v_k
//! γ'_{q,k} = 8^{−k} ∏_{i<k} i! ∏_{i=1..k} (2q + 1 − i)!
//! ```
//!
//! The scalings are positive, so the signs of `u_k`, `v_k` are the signs of
//! the minors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::factorials;
use crate::spectra::Parity;

/// Sturm data for one block index.
#[derive(Clone, Debug, Serialize)]
pub struct SturmCertificate {
    pub j: usize,
    pub parity: Parity,
    /// `u_0..u_{p−1}` (odd) or `v_0..v_q` (even).
    #[serde(serialize_with = "as_strings")]
    pub sequence: Vec<BigInt>,
    /// `γ_{p,k}` or `γ'_{q,k}` for each index of `sequence`.
    #[serde(serialize_with = "as_strings")]
    pub scalings: Vec<BigRational>,
    pub sign_agreements: usize,
    /// First index with a strictly negative term.
    pub transition_index: Option<usize>,
    pub transitions: usize,
    /// `(s ∓ √s)/2` with `s = 2p − 1` or `s = 2q`.
    pub roots_window: RootsWindow,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootsWindow {
    /// `2p − 1` or `2q`.
    pub s: u64,
    pub lower: f64,
    pub upper: f64,
}

impl RootsWindow {
    fn new(s: u64) -> Self {
        let r = (s as f64).sqrt();
        RootsWindow { s, lower: (s as f64 - r) / 2.0, upper: (s as f64 + r) / 2.0 }
    }

    /// `(s − √s)/2 < t ≤ (s − √s)/2 + 1`, decided in integers.
    pub fn contains_transition(&self, t: usize) -> bool {
        let s = self.s as i128;
        let t = t as i128;
        let a = s - 2 * t;
        let b = a + 2;
        (a < 0 || a * a < s) && b >= 0 && s <= b * b
    }

    pub fn exact(&self) -> String {
        format!("({0} ∓ √{0})/2", self.s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "reason")]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

fn as_strings<T: ToString, S: serde::Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Block-index parameters: `(parity, m, len)` where `m` is `p` or `q` and the
/// certified sequence has indices `0..len`.
fn parameters(j: usize) -> Result<(Parity, usize, usize)> {
    match Parity::of(j) {
        Parity::Odd if j >= 7 => {
            let p = j.div_ceil(2);
            Ok((Parity::Odd, p, p))
        }
        Parity::Even if j >= 6 => {
            let q = j / 2;
            Ok((Parity::Even, q, q + 1))
        }
        _ => Err(Error::OutOfRange(format!(
            "Sturm certificates need odd j >= 7 or even j >= 6, got {j}"
        ))),
    }
}

/// First `len` terms of the three-term recurrence for block `j`, with no
/// restriction on `len`.
pub fn recurrence_values(j: usize, len: usize) -> Result<Vec<BigInt>> {
    let (parity, m, _) = parameters(j)?;
    // u_{k+2} = c u_{k+1} − (k+1)(s − k − 1 + 1) u_k with s = 2p − 1 or 2q.
    let (c, top) = match parity {
        Parity::Odd => (2 * m as i64 - 5, 2 * m as i64),
        Parity::Even => (2 * m as i64 - 4, 2 * m as i64 + 1),
    };
    let mut out = Vec::with_capacity(len);
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for k in 0..len {
        out.push(cur.clone());
        // next = c·cur − k(top − k)·prev, written for index k + 1
        let w = BigInt::from(k as i64) * BigInt::from(top - k as i64);
        let next = &cur * c - w * &prev;
        prev = cur;
        cur = next;
    }
    Ok(out)
}

/// The certified prefix: `u_0..u_{p−1}` (odd `j`) or `v_0..v_q` (even `j`).
pub fn sturm_sequence(j: usize) -> Result<Vec<BigInt>> {
    let (_, _, len) = parameters(j)?;
    recurrence_values(j, len)
}

/// Closed form of the `n`-th term:
///
/// ```text
/// odd:  u_n = (2p−3)!/(2p−1−n)! · (4n² − 4(2p−1)n + (2p−1)(2p−2))  for n ≤ 2p − 1
/// even: v_n = (2q−2)!/(2q−n)!   · (4n² − 8qn + 2q(2q−1))          for n ≤ 2q
/// ```
///
/// The quadratic factors are `4(n − p₊)(n − p₋)` and `4(n − q₊)(n − q₋)`.
pub fn closed_form(j: usize, n: usize) -> Result<BigInt> {
    let (parity, m, _) = parameters(j)?;
    let (s, lead) = match parity {
        Parity::Odd => (2 * m - 1, 2 * m - 3),
        Parity::Even => (2 * m, 2 * m - 2),
    };
    if n > s {
        return Err(Error::OutOfRange(format!("closed form needs n <= {s}, got {n}")));
    }
    let falling: BigInt = (s - n + 1..=lead).fold(BigInt::one(), |acc, k| acc * k);
    let (s, n) = (s as i64, n as i64);
    let quad = 4 * n * n - 4 * s * n + s * (s - 1);
    if s - n > lead as i64 {
        // (s − n)! > lead!: the factorial ratio is 1/((s−n)(s−n−1)…), exact
        // because the quadratic supplies the missing factors.
        let denom: i64 = (lead as i64 + 1..=s - n).product();
        return Ok(BigInt::from(quad) / BigInt::from(denom));
    }
    Ok(falling * quad)
}

/// Checks `n!·[xⁿ] f = u_n` for `f = (1+x)^{2p−3}(1−x)²` (odd) or
/// `(1+x)^{2q−2}(1−x)²` (even), over every `n ≤ deg f + 2`.
pub fn generating_polynomial_check(j: usize) -> bool {
    let Ok((parity, m, _)) = parameters(j) else {
        return false;
    };
    let e = match parity {
        Parity::Odd => 2 * m - 3,
        Parity::Even => 2 * m - 2,
    };
    let len = e + 5;
    let Ok(seq) = recurrence_values(j, len) else {
        return false;
    };
    let fact = factorials(len);
    // binomial row of (1+x)^e, then multiply by 1 − 2x + x²
    let mut binom = vec![BigInt::one()];
    for _ in 0..e {
        let mut next = vec![BigInt::zero(); binom.len() + 1];
        for (i, b) in binom.iter().enumerate() {
            next[i] += b;
            next[i + 1] += b;
        }
        binom = next;
    }
    let coeff = |n: usize| -> BigInt {
        let at = |i: isize| -> BigInt {
            if i < 0 || i as usize >= binom.len() {
                BigInt::zero()
            } else {
                binom[i as usize].clone()
            }
        };
        let n = n as isize;
        at(n) - at(n - 1) * 2 + at(n - 2)
    };
    (0..len).all(|n| &fact[n] * coeff(n) == seq[n])
}

/// `γ_{p,k}` (odd) or `γ'_{q,k}` (even) for `k = 0..len`.
pub fn minor_scalings(j: usize, len: usize) -> Result<Vec<BigRational>> {
    let (parity, m, _) = parameters(j)?;
    let top = match parity {
        Parity::Odd => 2 * m,
        Parity::Even => 2 * m + 1,
    };
    let fact = factorials(top.max(len));
    // γ_k = N_k / 8^k with N_k a product of factorials; the only common factor
    // of N_k and 8^k is a power of two, so reduce by shifting instead of gcd.
    let mut out = Vec::with_capacity(len);
    let mut num = BigInt::one();
    for k in 0..len {
        if num.is_zero() {
            out.push(BigRational::zero());
            continue;
        }
        let den_bits = 3 * k as u64;
        let shift = num.trailing_zeros().unwrap_or(0).min(den_bits);
        out.push(BigRational::new_raw(&num >> shift, BigInt::one() << (den_bits - shift)));
        // γ_{k+1} = γ_k · k! · (top − k − 1)! / 8
        if k + 1 < top {
            num *= &fact[k] * &fact[top - k - 1];
        } else {
            num = BigInt::zero();
        }
    }
    Ok(out)
}

/// Signs with the zero convention: a vanishing term takes the sign opposite
/// to its predecessor.
pub fn conventional_signs(seq: &[BigInt]) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::with_capacity(seq.len());
    for x in seq {
        let s = if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            -out.last().copied().unwrap_or(-1)
        };
        out.push(s);
    }
    out
}

/// Positivity certificate for `T^{(j)}`, `j ≥ 6`.
///
/// Odd `j`: at most one sign disagreement in `u_0..u_{p−1}` means the leading
/// `(p−1)`-submatrix has at most one non-positive eigenvalue, so `λ_3(T) > 0`.
/// Even `j`: at most one disagreement in `v_0..v_q` gives `λ_2(T) > 0`.
/// The single sign change must fall in the window `(s−√s)/2 < t ≤ (s−√s)/2 + 1`.
pub fn positivity_certificate(j: usize) -> Result<SturmCertificate> {
    let (parity, m, len) = parameters(j)?;
    let sequence = recurrence_values(j, len)?;
    let scalings = minor_scalings(j, len)?;
    let signs = conventional_signs(&sequence);
    let sign_agreements = signs.windows(2).filter(|w| w[0] == w[1]).count();
    let transitions = signs.len() - 1 - sign_agreements;
    let transition_index = sequence.iter().position(Signed::is_negative);
    let s = match parity {
        Parity::Odd => 2 * m - 1,
        Parity::Even => 2 * m,
    } as u64;
    let roots_window = RootsWindow::new(s);
    let verdict = if transitions != 1 {
        Verdict::Fail(format!("{transitions} sign transitions, expected exactly one"))
    } else {
        match transition_index {
            Some(t) if roots_window.contains_transition(t) => Verdict::Pass,
            Some(t) => Verdict::Fail(format!(
                "transition at {t} outside window ({}, {}]",
                roots_window.lower,
                roots_window.lower + 1.0
            )),
            None => Verdict::Fail("no negative term".into()),
        }
    };
    Ok(SturmCertificate {
        j,
        parity,
        sequence,
        scalings,
        sign_agreements,
        transition_index,
        transitions,
        roots_window,
        verdict,
    })
}

/// Like [`positivity_certificate`] but a failing verdict becomes an error.
pub fn require_certificate(j: usize) -> Result<SturmCertificate> {
    let cert = positivity_certificate(j)?;
    match &cert.verdict {
        Verdict::Pass => Ok(cert),
        Verdict::Fail(reason) => Err(Error::CertificateFailed { j, reason: reason.clone() }),
    }
}

/// Compact JSON form: `{j, parity, verdict, transition_index, sequence_prefix}`.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub j: usize,
    pub parity: Parity,
    pub verdict: String,
    pub transition_index: Option<usize>,
    pub sequence_prefix: Vec<String>,
}

impl From<&SturmCertificate> for CertificateSummary {
    fn from(c: &SturmCertificate) -> Self {
        CertificateSummary {
            j: c.j,
            parity: c.parity,
            verdict: match &c.verdict {
                Verdict::Pass => "pass".into(),
                Verdict::Fail(r) => format!("fail: {r}"),
            },
            transition_index: c.transition_index,
            sequence_prefix: c.sequence.iter().take(16).map(ToString::to_string).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_sequences() {
        assert_eq!(sturm_sequence(7).unwrap(), ints(&[1, 3, 2, -30]));
        assert_eq!(recurrence_values(8, 3).unwrap(), ints(&[1, 4, 8]));
        assert!(sturm_sequence(5).is_err());
    }

    #[test]
    fn closed_form_small() {
        assert_eq!(closed_form(7, 2).unwrap(), BigInt::from(2));
        assert_eq!(closed_form(7, 3).unwrap(), BigInt::from(-30));
        assert_eq!(closed_form(8, 2).unwrap(), BigInt::from(8));
        assert_eq!(closed_form(7, 0).unwrap(), BigInt::from(1));
        assert_eq!(closed_form(7, 1).unwrap(), BigInt::from(3));
    }

    #[test]
    fn zero_takes_opposite_sign() {
        assert_eq!(conventional_signs(&ints(&[1, 0, -2])), vec![1, -1, -1]);
        assert_eq!(conventional_signs(&ints(&[-1, 0, 2])), vec![-1, 1, 1]);
        // p = 5: 2p − 1 = 9 is a square and u_3 = 0
        let c = positivity_certificate(9).unwrap();
        assert_eq!(c.sequence, ints(&[1, 5, 16, 0, -336]));
        assert_eq!(c.transition_index, Some(4));
        assert!(c.verdict.is_pass());
    }

    #[test]
    fn window() {
        let w = RootsWindow::new(7);
        assert!(w.contains_transition(3));
        assert!(!w.contains_transition(2) && !w.contains_transition(4));
        let w = RootsWindow::new(9);
        assert!(!w.contains_transition(3) && w.contains_transition(4));
    }
}
