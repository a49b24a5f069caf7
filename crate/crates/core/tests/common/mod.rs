#![allow(dead_code)]

use perron_bounds::graphio::{is_connected, Graph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// G(n, p) conditioned on connectivity by rejection.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if is_connected(&g) {
            return g;
        }
    }
}

pub fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    let k = rng.gen_range(1..=n);
    all.truncate(k);
    all.sort_unstable();
    all
}

pub fn random_partition(rng: &mut impl Rng, n: usize) -> Vec<Vec<usize>> {
    let m = rng.gen_range(1..=n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    // first m shuffled vertices seed the classes, the rest land anywhere
    let mut parts: Vec<Vec<usize>> = perm[..m].iter().map(|&v| vec![v]).collect();
    for &v in &perm[m..] {
        let i = rng.gen_range(0..m);
        parts[i].push(v);
    }
    parts
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
}

fn independent_within(g: &Graph, set: &[usize], k: usize) -> bool {
    let d = perron_bounds::graphio::distance_matrix(g);
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| d.get(u, v).is_none_or(|x| x > k)))
}

/// Brute force over all subsets: max sum of `w_u^2` over sets at pairwise distance > k.
pub fn naive_distance_independence(g: &Graph, w: &[f64], k: usize) -> f64 {
    subsets(g.n())
        .filter(|s| independent_within(g, s, k))
        .map(|s| s.iter().map(|&u| w[u] * w[u]).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Brute force: (clique number, max sigma^2 / w over nonempty cliques).
pub fn naive_clique(g: &Graph, w: &[f64]) -> (f64, f64) {
    let mut omega = 0.0f64;
    let mut kappa = 0.0f64;
    for s in subsets(g.n()).filter(|s| !s.is_empty()) {
        if s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| g.has_edge(u, v))) {
            omega = omega.max(s.len() as f64);
            let sigma: f64 = s.iter().map(|&u| w[u]).sum();
            let wsum: f64 = s.iter().map(|&u| w[u] * w[u]).sum();
            kappa = kappa.max(sigma * sigma / wsum);
        }
    }
    (omega, kappa)
}

/// Brute force: smallest k admitting a proper coloring, trying all k^n maps.
pub fn naive_chromatic(g: &Graph) -> usize {
    let n = g.n();
    let edges = g.edges();
    for k in 1..=n {
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let colors: Vec<u64> = (0..n)
                .map(|_| {
                    let x = c % k as u64;
                    c /= k as u64;
                    x
                })
                .collect();
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                return k;
            }
        }
    }
    n
}

/// Solves a small dense system by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Maximum of `P(target)` over `|P(mesh_i)| <= 1`, deg P <= k, by enumerating
/// every vertex of the constraint polytope. Requires `mesh.len() >= k + 1`.
pub fn lp_by_vertex_enumeration(mesh: &[f64], target: f64, k: usize) -> f64 {
    let rows: Vec<(Vec<f64>, f64)> = mesh
        .iter()
        .flat_map(|&x| {
            let p: Vec<f64> = (0..=k).map(|j| x.powi(j as i32)).collect();
            [(p.clone(), 1.0), (p.iter().map(|v| -v).collect(), 1.0)]
        })
        .collect();
    let obj: Vec<f64> = (0..=k).map(|j| target.powi(j as i32)).collect();
    let mut best = f64::NEG_INFINITY;
    let mut choose = vec![0usize; k + 1];
    fn rec(
        start: usize,
        depth: usize,
        choose: &mut Vec<usize>,
        rows: &[(Vec<f64>, f64)],
        obj: &[f64],
        best: &mut f64,
    ) {
        if depth == choose.len() {
            let a = choose.iter().map(|&i| rows[i].0.clone()).collect();
            let b = choose.iter().map(|&i| rows[i].1).collect();
            if let Some(x) = solve(a, b) {
                let feasible = rows.iter().all(|(r, rhs)| r.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= rhs + 1e-9);
                if feasible {
                    let v: f64 = obj.iter().zip(&x).map(|(p, q)| p * q).sum();
                    *best = best.max(v);
                }
            }
            return;
        }
        for i in start..rows.len() {
            choose[depth] = i;
            rec(i + 1, depth + 1, choose, rows, obj, best);
        }
    }
    rec(0, 0, &mut choose, &rows, &obj, &mut best);
    best
}

/// Characteristic polynomial of a general square matrix (Faddeev-LeVerrier),
/// coefficients from the constant term up.
pub fn char_poly(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = vec![vec![0.0; n]; n];
    let mut c = 1.0;
    for k in 1..=n {
        for i in 0..n {
            m[i][i] += c;
        }
        let next: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|l| a[i][l] * m[l][j]).sum()).collect()).collect();
        m = next;
        c = -(0..n).map(|i| m[i][i]).sum::<f64>() / k as f64;
        coeffs[n - k] = c;
    }
    coeffs
}
