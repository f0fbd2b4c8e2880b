#![allow(dead_code)]

use std::path::PathBuf;

use hodge_forge::fan::Fan;
use hodge_forge::Matroid;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn data_file(name: &str) -> PathBuf {
    data_dir().join(format!("{name}.json"))
}

pub fn load(name: &str) -> Matroid {
    let text = std::fs::read_to_string(data_file(name)).unwrap();
    Matroid::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Boolean matroids up to 4 elements, uniform `U(k,n)` for `1 ≤ k ≤ n ≤ 5`,
/// and the two hand-written files.
pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=4).map(|n| format!("b{n}")).collect();
    for n in 1..=5 {
        for k in 1..n {
            names.push(format!("u{k}{n}"));
        }
    }
    names.push("b5".into());
    names.push("line_plus_point".into());
    names.push("k4_graphic".into());
    names
}

pub fn corpus() -> Vec<(String, Matroid)> {
    corpus_names().into_iter().map(|n| (n.clone(), load(&n))).collect()
}

/// Hilbert function of `SR(Δ)/(θ)` by dense elimination. Degree `k` is
/// spanned by monomials supported on cones; the relations are `θ_j·m` for
/// every such monomial `m` of degree `k−1`, with non-face terms dropped.
pub fn hilbert_oracle(fan: &Fan, max_degree: usize) -> Vec<usize> {
    let n = fan.num_rays();
    let is_face = |support: &[usize]| {
        let mut s = support.to_vec();
        s.sort_unstable();
        s.dedup();
        s.is_empty() || fan.contains_cone(&s)
    };
    // Monomials as sorted multisets of ray indices.
    let mut layers: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    for k in 1..=max_degree {
        let mut next = Vec::new();
        for m in &layers[k - 1] {
            let start = m.last().copied().unwrap_or(0);
            for r in start..n {
                let mut mm = m.clone();
                mm.push(r);
                if is_face(&mm) {
                    next.push(mm);
                }
            }
        }
        layers.push(next);
    }
    let mut out = vec![1];
    for k in 1..=max_degree {
        let cols = &layers[k];
        let index = |m: &Vec<usize>| cols.binary_search(m).ok();
        let mut rows = Vec::new();
        for prev in &layers[k - 1] {
            for j in 0..fan.ambient_dim() {
                let mut row = vec![BigRational::zero(); cols.len()];
                for r in 0..n {
                    let c = &fan.ray(r)[j];
                    if c.is_zero() {
                        continue;
                    }
                    let mut mm = prev.clone();
                    mm.push(r);
                    mm.sort_unstable();
                    if let Some(i) = index(&mm) {
                        row[i] += c;
                    }
                }
                rows.push(row);
            }
        }
        out.push(cols.len() - dense_rank(rows));
    }
    out
}

fn dense_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = BigRational::one() / &rows[rank][c];
        let pivot: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}
