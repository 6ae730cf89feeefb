/// Smith normal form of an integer relation matrix.
///
/// `diagonal` holds the invariant factors (including 1s and 0s, length = number of
/// columns). `column_transform` is the unimodular V with U·A·V = D, so the map
/// x ↦ x·V identifies Z^cols / rowspace(A) with ⊕ Z/diagonal[i].
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub column_transform: Vec<Vec<i64>>,
}

pub fn smith_normal_form(rows: &[Vec<i64>], cols: usize) -> SmithForm {
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let nrows = a.len();
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut diagonal = vec![0i64; cols];

    let col_axpy = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, dst: usize, src: usize, q: i64| {
        for row in a.iter_mut() {
            row[dst] -= q * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let col_swap = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in v.iter_mut() {
            row.swap(x, y);
        }
    };

    for t in 0..cols.min(nrows) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..cols {
                    if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            col_swap(&mut a, &mut v, t, pj);

            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    col_axpy(&mut a, &mut v, j, t, q);
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..nrows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&src) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
        diagonal[t] = a[t][t];
    }
    SmithForm { diagonal, column_transform: v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_of_coprime_factors() {
        let f = smith_normal_form(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(f.diagonal, vec![1, 6]);
    }

    #[test]
    fn invariant_factors_divide() {
        let f = smith_normal_form(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]], 3);
        assert_eq!(f.diagonal, vec![2, 2, 60]);
    }

    #[test]
    fn transform_maps_relations_onto_diagonal_lattice() {
        let rows = vec![vec![6, 0], vec![0, 4], vec![3, 2]];
        let f = smith_normal_form(&rows, 2);
        for r in &rows {
            let img: Vec<i64> = (0..2).map(|j| (0..2).map(|i| r[i] * f.column_transform[i][j]).sum()).collect();
            for (x, &d) in img.iter().zip(&f.diagonal) {
                if d == 0 {
                    assert_eq!(*x, 0);
                } else {
                    assert_eq!(x.rem_euclid(d), 0);
                }
            }
        }
        assert_eq!(f.diagonal.iter().product::<i64>().abs(), 12);
    }
}
