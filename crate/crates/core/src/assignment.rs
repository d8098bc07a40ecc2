//! Maximum-weight bipartite assignment (Hungarian algorithm).
//!
//! Used to label eigenvectors: single-particle modes against lattice sites,
//! and many-body eigenstates against dressed product states.

/// Assigns every row to a distinct column, maximizing the summed weight.
///
/// `weights` is row-major with `rows ≤ cols`. Returns `col[r]` for each row.
/// When the row-wise argmax is already a bijection it is returned directly,
/// which is optimal whenever each row's maximum is unique to it.
pub fn max_weight_assignment(weights: &[f64], rows: usize, cols: usize) -> Vec<usize> {
    assert_eq!(weights.len(), rows * cols, "weight matrix has wrong size");
    assert!(rows <= cols, "need at least as many columns as rows");
    if rows == 0 {
        return Vec::new();
    }

    let greedy: Vec<usize> = (0..rows)
        .map(|r| {
            let row = &weights[r * cols..(r + 1) * cols];
            (0..cols)
                .max_by(|&a, &b| row[a].total_cmp(&row[b]).then(b.cmp(&a)))
                .unwrap()
        })
        .collect();
    let mut taken = vec![false; cols];
    if greedy.iter().all(|&c| !std::mem::replace(&mut taken[c], true)) {
        return greedy;
    }

    hungarian_min(rows, cols, |r, c| -weights[r * cols + c])
}

/// Shortest-augmenting-path Hungarian method with row/column potentials,
/// O(rows² · cols). Indices inside are 1-based with 0 as the virtual root.
fn hungarian_min(rows: usize, cols: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<usize> {
    let mut u = vec![0.0; rows + 1];
    let mut v = vec![0.0; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];

    for r in 1..=rows {
        owner[0] = r;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut result = vec![0; rows];
    for j in 1..=cols {
        if owner[j] != 0 {
            result[owner[j] - 1] = j - 1;
        }
    }
    result
}
