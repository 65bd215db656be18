//! Brute-force Betti numbers of the residue field over a monomial algebra.
//!
//! Shares no code with the library: monomials, multiplication, modular
//! arithmetic and Gaussian elimination are all implemented here. Each
//! syzygy module is kept as a subspace of a free module `A^r`, its kernel
//! under the next map is found by plain row reduction, and the number of
//! minimal generators is `dim K - dim mK`.

use std::collections::HashMap;

const P: u64 = 32003;

struct MonomialAlgebra {
    nvars: usize,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialAlgebra {
    /// Standard monomials of `k[x_1..x_n] / (relations)`, where each
    /// relation is an exponent vector.
    fn new(nvars: usize, relations: &[Vec<u32>]) -> Self {
        let killed = |m: &[u32]| relations.iter().any(|r| r.iter().zip(m).all(|(a, b)| a <= b));
        let mut basis = vec![vec![0; nvars]];
        let mut index = HashMap::new();
        index.insert(vec![0; nvars], 0);
        let mut k = 0;
        while k < basis.len() {
            for v in 0..nvars {
                let mut m = basis[k].clone();
                m[v] += 1;
                if !killed(&m) && !index.contains_key(&m) {
                    index.insert(m.clone(), basis.len());
                    basis.push(m);
                }
            }
            k += 1;
        }
        MonomialAlgebra { nvars, basis, index }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Product of basis monomials `i` and `j`, if it survives.
    fn mul(&self, i: usize, j: usize) -> Option<usize> {
        let m: Vec<u32> = self.basis[i].iter().zip(&self.basis[j]).map(|(a, b)| a + b).collect();
        self.index.get(&m).copied()
    }

    fn var(&self, v: usize) -> Option<usize> {
        let mut m = vec![0; self.nvars];
        m[v] = 1;
        self.index.get(&m).copied()
    }

    /// `b * x` for `x ∈ A^r` stored densely as `r * dim` coordinates.
    fn scale(&self, b: usize, x: &[u64]) -> Vec<u64> {
        let d = self.dim();
        let mut out = vec![0; x.len()];
        for (pos, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (blk, mono) = (pos / d, pos % d);
            if let Some(t) = self.mul(b, mono) {
                out[blk * d + t] = (out[blk * d + t] + c) % P;
            }
        }
        out
    }
}

fn inv(a: u64) -> u64 {
    let (mut r, mut base, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    r
}

/// Row echelon basis of the span of `rows`.
fn echelon(rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut out: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut r in rows {
        for (piv, e) in &out {
            let c = r[*piv];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(e) {
                    *x = (*x + P - c * y % P) % P;
                }
            }
        }
        if let Some(piv) = r.iter().position(|&x| x != 0) {
            let s = inv(r[piv]);
            for x in r.iter_mut() {
                *x = *x * s % P;
            }
            for (_, e) in out.iter_mut() {
                let c = e[piv];
                if c != 0 {
                    for (x, y) in e.iter_mut().zip(&r) {
                        *x = (*x + P - c * y % P) % P;
                    }
                }
            }
            out.push((piv, r));
        }
    }
    out.into_iter().map(|(_, r)| r).collect()
}

/// Kernel of the linear map whose columns are `cols`, each of length `m`.
fn kernel(cols: &[Vec<u64>], m: usize) -> Vec<Vec<u64>> {
    let n = cols.len();
    let rows: Vec<Vec<u64>> = (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let red = echelon(rows);
    let pivots: Vec<usize> = red.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    let mut out = Vec::new();
    for free in (0..n).filter(|j| !pivots.contains(j)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (r, &p) in red.iter().zip(&pivots) {
            v[p] = (P - r[free]) % P;
        }
        out.push(v);
    }
    out
}

/// Minimal generators of the submodule of `A^r` spanned over `k` by `space`.
fn minimal_generators(alg: &MonomialAlgebra, space: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let vars: Vec<usize> = (0..alg.nvars).filter_map(|v| alg.var(v)).collect();
    let m_times: Vec<Vec<u64>> = space
        .iter()
        .flat_map(|x| vars.iter().map(|&v| alg.scale(v, x)).collect::<Vec<_>>())
        .collect();
    let mut basis = echelon(m_times);
    let mut gens = Vec::new();
    for x in space {
        let before = basis.len();
        let mut trial = basis.clone();
        trial.push(x.clone());
        let trial = echelon(trial);
        if trial.len() > before {
            gens.push(x.clone());
            basis = trial;
        }
    }
    gens
}

/// `b_0, ..., b_n` of the residue field.
pub fn residue_field_betti(nvars: usize, relations: &[Vec<u32>], n: usize) -> Vec<usize> {
    let alg = MonomialAlgebra::new(nvars, relations);
    let d = alg.dim();
    let mut betti = vec![1];
    // generators of the first syzygy m ⊂ A^1
    let mut gens: Vec<Vec<u64>> = (0..nvars)
        .filter_map(|v| alg.var(v))
        .map(|b| {
            let mut e = vec![0; d];
            e[b] = 1;
            e
        })
        .collect();
    let mut target_rank = 1;
    while betti.len() <= n {
        betti.push(gens.len());
        if betti.len() > n {
            break;
        }
        // A^s → A^r sending generator j to gens[j]; columns indexed j * d + b
        let cols: Vec<Vec<u64>> = gens
            .iter()
            .flat_map(|g| (0..d).map(|b| alg.scale(b, g)).collect::<Vec<_>>())
            .collect();
        let syz = kernel(&cols, target_rank * d);
        target_rank = gens.len();
        gens = minimal_generators(&alg, &syz);
    }
    betti.truncate(n + 1);
    betti
}
