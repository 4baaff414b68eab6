use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::field::FieldCtx;
use crate::arith::unramified::ZqRing;
use crate::arith::zmod::Zmod;
use crate::error::{Error, Result};
use crate::polytope::laurent::LaurentPoly;

/// Most torus points we enumerate for one sum.
pub const MAX_TORUS_POINTS: u64 = 1 << 27;

/// Everything needed to evaluate `Tr(f(x̂))` over the torus of `F_(q^k)`.
///
/// Each term `a_u x̂^u` is the Teichmüller lift of `g^(log a_u + ⟨u, log x⟩)`
/// for the generator `g` of `F_(q^k)^×`, so its trace is a table lookup.
pub struct TraceTable {
    k: u32,
    n: usize,
    order: u64,
    q: u64,
    zm: Zmod,
    trace_of_power: Vec<u64>,
    terms: Vec<(u64, Vec<i64>)>,
}

impl TraceTable {
    pub fn new(f: &LaurentPoly, k: u32, prec: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("extension degree k must be positive".into()));
        }
        let small = f.ctx();
        let big = Arc::new(FieldCtx::new(small.p(), small.degree() * k)?);
        let order = big.order();
        order
            .checked_pow(f.nvars() as u32)
            .filter(|&t| t <= MAX_TORUS_POINTS)
            .ok_or_else(|| Error::InvalidInput(format!("torus over F_(q^{k}) is too large")))?;
        let root = big.find_root_of(small).expect("F_q embeds in F_(q^k)");
        let terms = f
            .terms()
            .iter()
            .map(|(u, &c)| {
                let image = big.embed_from(small, root, c);
                (big.log(image).expect("nonzero coefficient"), u.clone())
            })
            .collect();
        let ring = ZqRing::new(big.clone(), prec)?;
        let trace_of_power = ring.teichmuller_powers().iter().map(|t| ring.trace(t)).collect();
        Ok(TraceTable {
            k,
            n: f.nvars(),
            order,
            q: small.size(),
            zm: Zmod::new(small.p(), prec)?,
            trace_of_power,
            terms,
        })
    }

    pub fn scalars(&self) -> Zmod {
        self.zm
    }

    /// `Tr(f(x̂))` at the point with coordinate logs `logs`.
    pub fn trace_at(&self, logs: &[u64]) -> u64 {
        let ord = self.order as i128;
        self.terms.iter().fold(0, |acc, (c, u)| {
            let e = u
                .iter()
                .zip(logs)
                .fold(*c as i128, |s, (&ui, &li)| s + ui as i128 * li as i128)
                .rem_euclid(ord);
            self.zm.add(acc, self.trace_of_power[e as usize])
        })
    }

    /// Number of torus points with each trace value. With `primitive_only`
    /// only points whose coordinates generate `F_(q^k)` over `F_q` count.
    pub fn distribution(&self, primitive_only: bool) -> BTreeMap<u64, u64> {
        // x lies in F_(q^e) iff its log is divisible by (q^k - 1)/(q^e - 1)
        let sub_steps: Vec<u64> = (1..self.k)
            .filter(|e| self.k.is_multiple_of(*e))
            .map(|e| self.order / (self.q.pow(e) - 1))
            .collect();
        let mut counts = BTreeMap::new();
        let mut logs = vec![0u64; self.n];
        loop {
            let keep = !primitive_only
                || !sub_steps
                    .iter()
                    .any(|&s| logs.iter().all(|&l| l % s == 0));
            if keep {
                *counts.entry(self.trace_at(&logs)).or_insert(0u64) += 1;
            }
            let mut i = 0;
            loop {
                if i == self.n {
                    return counts;
                }
                logs[i] += 1;
                if logs[i] < self.order {
                    break;
                }
                logs[i] = 0;
                i += 1;
            }
        }
    }
}
