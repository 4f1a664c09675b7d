use crate::calculus::FormBasis;

/// `γ(e_i)`: the elementary matrix `E_{αβ}` for `e_i = e_α^β`.
pub fn gamma(e: FormBasis) -> [[i64; 2]; 2] {
    let (a, b) = e.endo();
    let mut m = [[0; 2]; 2];
    m[a][b] = 1;
    m
}

/// `Σ_{αβ} γ(e_i)^α_β e_α^β`, which is `e_i` again.
pub fn gamma_roundtrip(e: FormBasis) -> FormBasis {
    let g = gamma(e);
    let mut hit = None;
    for a in 0..2 {
        for b in 0..2 {
            if g[a][b] == 1 {
                hit = Some(FormBasis::from_endo(a, b));
            }
        }
    }
    hit.expect("one nonzero entry")
}
