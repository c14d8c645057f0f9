use super::FpModule;
use crate::error::Result;
use crate::fp::{Echelon, FpMatrix};

/// A spinning basis of a module: every basis vector is a seed or a
/// generator applied to an earlier basis vector.
struct Spin {
    /// `(parent, generator)` for spun vectors, `None` for seeds.
    parent: Vec<Option<(usize, usize)>>,
    seed_of: Vec<usize>,
    seeds: usize,
    basis_inv: FpMatrix,
    /// Coordinates of `ρ(s) b_k` for every `(k, s)` that did not produce a
    /// new basis vector.
    relations: Vec<(usize, usize, Vec<u32>)>,
}

fn spin(m: &FpModule) -> Spin {
    let p = m.prime();
    let n = m.dim();
    let mut ech = Echelon::new(p, n);
    let mut vectors: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    let mut seed_of = Vec::with_capacity(n);
    let mut seeds = 0;
    let mut produced = std::collections::HashSet::new();
    for i in 0..n {
        if ech.is_full() {
            break;
        }
        let mut e = vec![0u32; n];
        e[i] = 1;
        if !ech.insert(e.clone()) {
            continue;
        }
        let start = vectors.len();
        vectors.push(e);
        parent.push(None);
        seed_of.push(seeds);
        let mut k = start;
        while k < vectors.len() {
            for (s, a) in m.action().iter().enumerate() {
                let v = a.mul_vec(&vectors[k]);
                if ech.insert(v.clone()) {
                    vectors.push(v);
                    parent.push(Some((k, s)));
                    seed_of.push(seeds);
                    produced.insert((k, s));
                }
            }
            k += 1;
        }
        seeds += 1;
    }
    let basis = FpMatrix::from_columns(p, n, &vectors);
    let basis_inv = basis.inverse().expect("spinning basis spans");
    let mut relations = Vec::new();
    for (k, b) in vectors.iter().enumerate() {
        for (s, a) in m.action().iter().enumerate() {
            if produced.contains(&(k, s)) {
                continue;
            }
            relations.push((k, s, basis_inv.mul_vec(&a.mul_vec(b))));
        }
    }
    Spin {
        parent,
        seed_of,
        seeds,
        basis_inv,
        relations,
    }
}

/// `Hom(m, n)` given a spinning basis of `m`: a map is determined by the
/// images of the seeds, subject to the relations of the spin.
fn hom_by_spin(m: &FpModule, n: &FpModule, sp: &Spin) -> Vec<FpMatrix> {
    let p = m.prime();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Vec::new();
    }
    let unknowns = sp.seeds * dn;
    // F(b_k) = words[k] * w_{seed_of[k]}
    let mut words: Vec<FpMatrix> = Vec::with_capacity(dm);
    for par in &sp.parent {
        let w = match *par {
            None => FpMatrix::identity(p, dn),
            Some((k, s)) => n.action()[s].mul(&words[k]),
        };
        words.push(w);
    }
    let mut eqs = Echelon::new(p, unknowns);
    for (k, s, coords) in &sp.relations {
        let mut block = FpMatrix::zeros(p, dn, unknowns);
        add_block(&mut block, sp.seed_of[*k] * dn, 1, &n.action()[*s].mul(&words[*k]));
        for (l, &c) in coords.iter().enumerate() {
            if c != 0 {
                add_block(&mut block, sp.seed_of[l] * dn, p - c, &words[l]);
            }
        }
        for r in 0..dn {
            let row = block.row(r);
            if row.iter().any(|&x| x != 0) {
                eqs.insert(row.to_vec());
            }
        }
        if eqs.is_full() {
            return Vec::new();
        }
    }
    let null = if eqs.rank() == 0 {
        FpMatrix::identity(p, unknowns)
    } else {
        eqs.to_matrix().nullspace()
    };
    (0..null.rows())
        .map(|i| {
            let w = null.row(i);
            let cols: Vec<Vec<u32>> = (0..dm)
                .map(|k| {
                    let off = sp.seed_of[k] * dn;
                    words[k].mul_vec(&w[off..off + dn])
                })
                .collect();
            FpMatrix::from_columns(p, dn, &cols).mul(&sp.basis_inv)
        })
        .collect()
}

fn add_block(dst: &mut FpMatrix, col0: usize, c: u32, src: &FpMatrix) {
    let p = dst.prime();
    for r in 0..src.rows() {
        for (j, &x) in src.row(r).iter().enumerate() {
            if x != 0 {
                let v = (dst.get(r, col0 + j) as u64 + c as u64 * x as u64) % p as u64;
                dst.set(r, col0 + j, v as u32);
            }
        }
    }
}

fn canonical(p: u32, rows: usize, cols: usize, maps: Vec<FpMatrix>) -> Vec<FpMatrix> {
    let ech = Echelon::from_rows(p, rows * cols, maps.into_iter().map(|f| f.flatten()));
    ech.sorted_rows()
        .into_iter()
        .map(|r| FpMatrix::from_data(p, rows, cols, r).unwrap())
        .collect()
}

/// Basis of `Hom_G(m, n)` as `dim n × dim m` matrices, in reduced echelon
/// form of their row-major flattenings.
pub fn hom_space(m: &FpModule, n: &FpModule) -> Result<Vec<FpMatrix>> {
    m.check_compatible(n)?;
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    let sm = spin(m);
    let nd = n.dual();
    let sn = spin(&nd);
    let maps = if sm.seeds * n.dim() <= sn.seeds * m.dim() {
        hom_by_spin(m, n, &sm)
    } else {
        // Hom(m, n) ≅ Hom(n*, m*) by transposition.
        hom_by_spin(&nd, &m.dual(), &sn).into_iter().map(|f| f.transpose()).collect()
    };
    Ok(canonical(m.prime(), n.dim(), m.dim(), maps))
}

pub fn hom_dim(m: &FpModule, n: &FpModule) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// `Hom_G(m, n)` as the nullspace of the full linear system in the
/// `dim m · dim n` entries. Quadratic in size; intended as a check.
pub fn hom_space_naive(m: &FpModule, n: &FpModule) -> Result<Vec<FpMatrix>> {
    m.check_compatible(n)?;
    let p = m.prime();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let vars = dm * dn;
    let mut rows = Vec::new();
    for (a, b) in m.action().iter().zip(n.action()) {
        // (F a - b F)[i][j] = Σ_k F[i][k] a[k][j] - Σ_k b[i][k] F[k][j]
        for i in 0..dn {
            for j in 0..dm {
                let mut row = vec![0u32; vars];
                for k in 0..dm {
                    let idx = i * dm + k;
                    row[idx] = (row[idx] + a.get(k, j)) % p;
                }
                for k in 0..dn {
                    let idx = k * dm + j;
                    row[idx] = (row[idx] + p - b.get(i, k)) % p;
                }
                rows.push(row);
            }
        }
    }
    let null = if rows.is_empty() {
        FpMatrix::identity(p, vars)
    } else {
        FpMatrix::from_rows(p, vars, &rows).nullspace()
    };
    let maps = (0..null.rows())
        .map(|r| FpMatrix::from_data(p, dn, dm, null.row(r).to_vec()).unwrap())
        .collect();
    Ok(canonical(p, dn, dm, maps))
}
