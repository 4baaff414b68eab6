use super::ring::Ring;
use super::zmod::{factorial_valuation, Zmod};
use crate::error::{Error, Result};

/// p-adic precision left after dividing by `j!` for every `j < n`.
pub fn binomial_precision(zm: &Zmod, n: usize) -> Result<u32> {
    let loss = factorial_valuation(zm.p(), n.saturating_sub(1) as u64);
    if loss >= zm.prec() {
        return Err(Error::PrecisionUnderflow {
            needed: loss + 1,
            available: zm.prec(),
        });
    }
    Ok(zm.prec() - loss)
}

/// `(1+T)^t mod T^n`, for `t` given modulo `p^M`.
///
/// The coefficient `binom(t, j)` only depends on `t mod p^(M - ord_p(j!))`,
/// so the result lives in `Z/p^(M_out)` with `M_out = M - ord_p((n-1)!)`,
/// returned alongside the coefficients.
pub fn one_plus_t_pow(zm: &Zmod, t: u64, n: usize) -> Result<(Zmod, Vec<u64>)> {
    let out = zm.with_prec(binomial_precision(zm, n)?);
    let p = zm.p();
    let mut coeffs = Vec::with_capacity(n);
    // binom(t, j) = unit · p^v, computed for the integer representative t
    let mut unit = zm.one();
    let mut v: u32 = 0;
    let mut vanished = false;
    for j in 0..n as u64 {
        if j > 0 {
            if t < j {
                vanished = true;
            } else {
                let mut num = t - j + 1;
                while num.is_multiple_of(p) {
                    num /= p;
                    v += 1;
                }
                let mut den = j;
                while den % p == 0 {
                    den /= p;
                    v -= 1;
                }
                unit = zm.mul(unit, zm.reduce_u64(num));
                unit = zm.mul(unit, zm.inv(zm.reduce_u64(den)).expect("p-free part is a unit"));
            }
        }
        let c = if vanished || v >= out.prec() {
            0
        } else {
            out.mul(out.reduce_u64(unit), out.pow(p, v as u64))
        };
        coeffs.push(c);
    }
    Ok((out, coeffs))
}
