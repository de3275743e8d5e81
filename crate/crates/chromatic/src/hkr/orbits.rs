//! Orbits of multiplication by `q` on `(Z/p^L)^n`.

use serde::Serialize;

use crate::numerics::ChromaticParams;

use super::HkrError;

/// Largest `p^{nL}` we enumerate.
pub const MAX_POINTS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitLabel {
    pub level: u32,
    /// Lexicographically smallest element of the orbit.
    pub representative: Vec<u64>,
    /// The element has order `p^t`.
    pub order_exponent: u32,
    pub size: u64,
}

impl OrbitLabel {
    pub fn is_zero(&self) -> bool {
        self.order_exponent == 0
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.representative.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

fn decode(mut x: u64, modulus: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = x % modulus;
        x /= modulus;
    }
    out
}

fn encode(v: &[u64], modulus: u64) -> u64 {
    v.iter().fold(0, |acc, &x| acc * modulus + x)
}

fn order_exponent(v: &[u64], p: u64, level: u32) -> u32 {
    let mut t = 0;
    let mut w: Vec<u64> = v.to_vec();
    let modulus = p.pow(level);
    while w.iter().any(|&x| x != 0) {
        w.iter_mut().for_each(|x| *x = *x * p % modulus);
        t += 1;
    }
    t
}

/// All orbits at level `L`, ordered by representative. Each orbit is
/// checked against `{(1 + p^r j) a : 0 <= j < p^{max(t-r, 0)}}`.
pub fn enumerate_orbits(params: &ChromaticParams, level: u32) -> Result<Vec<OrbitLabel>, HkrError> {
    let p = params.p;
    let n = params.n as usize;
    let modulus = p.checked_pow(level).ok_or(HkrError::Infeasible(format!("p^{level}")))?;
    let total = (modulus as u128).pow(n as u32);
    if total > MAX_POINTS as u128 {
        return Err(HkrError::Infeasible(format!("{total} points at level {level}")));
    }
    let total = total as u64;
    let q = params.q % modulus;
    let mut seen = vec![false; total as usize];
    let mut orbits = Vec::new();
    for x in 0..total {
        if seen[x as usize] {
            continue;
        }
        let rep = decode(x, modulus, n);
        let mut members = Vec::new();
        let mut cur = rep.clone();
        loop {
            let code = encode(&cur, modulus);
            if seen[code as usize] {
                break;
            }
            seen[code as usize] = true;
            members.push(code);
            cur.iter_mut().for_each(|c| *c = *c * q % modulus);
        }
        let t = order_exponent(&rep, p, level);
        let size = p.pow(t.saturating_sub(params.r));
        let mut predicted: Vec<u64> = (0..size)
            .map(|j| {
                let factor = (1 + p.pow(params.r) * j) % modulus;
                encode(&rep.iter().map(|&a| a * factor % modulus).collect::<Vec<_>>(), modulus)
            })
            .collect();
        predicted.sort();
        predicted.dedup();
        members.sort();
        if members != predicted {
            return Err(HkrError::OrbitShape(format!("{rep:?}")));
        }
        orbits.push(OrbitLabel { level, representative: rep, order_exponent: t, size });
    }
    Ok(orbits)
}

/// Number of orbits of size `p^k`, indexed by `k`.
pub fn orbit_size_counts(orbits: &[OrbitLabel], p: u64) -> Vec<u64> {
    let mut counts: Vec<u64> = Vec::new();
    for o in orbits {
        let mut k = 0usize;
        let mut s = o.size;
        while s > 1 {
            s /= p;
            k += 1;
        }
        if counts.len() <= k {
            counts.resize(k + 1, 0);
        }
        counts[k] += 1;
    }
    counts
}
