//! Integer row reduction for subgroups of Z^d.

/// `rows[target] -= q * rows[pivot]`
fn subtract_multiple(rows: &mut [Vec<i128>], target: usize, pivot: usize, q: i128) {
    let p = rows[pivot].clone();
    for (x, y) in rows[target].iter_mut().zip(&p) {
        *x -= q * y;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `generators`.
///
/// Returns the nonzero basis rows. Pivots are positive and entries above
/// each pivot are reduced into `[0, pivot)`.
pub fn hermite_basis(generators: &[Vec<i64>], dimension: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i128>> = generators
        .iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .map(|g| g.iter().map(|&x| x as i128).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..dimension {
        if pivot_row >= rows.len() {
            break;
        }
        // Euclid on the column until a single nonzero entry remains at/below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if rows[r][col] != 0 && best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                let q = rows[r][col].div_euclid(rows[pivot_row][col]);
                if q != 0 {
                    subtract_multiple(&mut rows, r, pivot_row, q);
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col] == 0 {
            continue;
        }
        if rows[pivot_row][col] < 0 {
            for x in rows[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let p = rows[pivot_row][col];
        for r in 0..pivot_row {
            let q = rows[r][col].div_euclid(p);
            if q != 0 {
                subtract_multiple(&mut rows, r, pivot_row, q);
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect()
}

/// True iff the generators span all of Z^d (full rank, every elementary divisor 1).
pub fn generates_full_lattice(generators: &[Vec<i64>], dimension: usize) -> bool {
    let basis = hermite_basis(generators, dimension);
    basis.len() == dimension && (0..dimension).all(|i| basis[i][i] == 1)
}
