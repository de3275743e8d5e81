use super::ring::CoeffRing;

/// Coefficients `[1, a_1, .., a_d]` of `det(t I - A) = t^d + a_1 t^{d-1} + .. + a_d`,
/// by Berkowitz's division-free algorithm. Works over any commutative ring.
pub fn charpoly<R: CoeffRing>(ring: &R, a: &[Vec<R::Elem>]) -> Vec<R::Elem> {
    let n = a.len();
    let mut v = vec![ring.one()];
    for r in 1..=n {
        // Leading (r-1)x(r-1) block, new row/column and corner.
        let m = r - 1;
        let corner = &a[m][m];
        let row: Vec<R::Elem> = (0..m).map(|j| a[m][j].clone()).collect();
        let mut col: Vec<R::Elem> = (0..m).map(|i| a[i][m].clone()).collect();
        // First column of the Toeplitz matrix: 1, -corner, -R C, -R A C, ...
        let mut first = vec![ring.one(), ring.neg(corner)];
        for _ in 0..m {
            let rc = dot(ring, &row, &col);
            first.push(ring.neg(&rc));
            col = (0..m).map(|i| dot(ring, &a[i][..m], &col)).collect();
        }
        // v_new = T * v, T lower triangular Toeplitz of size (r+1) x r.
        let mut next = vec![ring.zero(); r + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j && i - j < first.len() {
                    *slot = ring.add(slot, &ring.mul(&first[i - j], vj));
                }
            }
        }
        v = next;
    }
    v
}

/// Determinant via the constant term of the characteristic polynomial.
pub fn det<R: CoeffRing>(ring: &R, a: &[Vec<R::Elem>]) -> R::Elem {
    let cp = charpoly(ring, a);
    let c = cp.last().cloned().unwrap_or_else(|| ring.one());
    if a.len() % 2 == 1 {
        ring.neg(&c)
    } else {
        c
    }
}

fn dot<R: CoeffRing>(ring: &R, x: &[R::Elem], y: &[R::Elem]) -> R::Elem {
    x.iter().zip(y).fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
}
