//! Hadamard matrices, the `κ` map to binary words, monomial matrices and
//! the transfer between matrix automorphisms and code automorphisms.

use crate::code::Code;
use crate::error::{Error, Result};
use crate::symmetry::GraphAutomorphism;
use crate::vertex::{Vertex, MAX_LEN};

/// A `±1` matrix with `H Hᵀ = mI`, checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    entries: Vec<Vec<i8>>,
}

fn is_sign(x: i8) -> bool {
    x == 1 || x == -1
}

impl HadamardMatrix {
    pub fn new(entries: Vec<Vec<i8>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 || m > MAX_LEN {
            return Err(Error::param(format!("order {m} outside 1..={MAX_LEN}")));
        }
        if entries.iter().any(|r| r.len() != m || !r.iter().all(|&x| is_sign(x))) {
            return Err(Error::param("entries must form a square ±1 array"));
        }
        for i in 0..m {
            for j in i..m {
                let dot: i32 = (0..m).map(|k| (entries[i][k] * entries[j][k]) as i32).sum();
                let want = if i == j { m as i32 } else { 0 };
                if dot != want {
                    return Err(Error::param(format!(
                        "rows {} and {} have inner product {dot}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(HadamardMatrix { entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i][j]
    }

    /// First row and first column all `+1`.
    pub fn is_normalized(&self) -> bool {
        self.entries[0].iter().all(|&x| x == 1) && self.entries.iter().all(|r| r[0] == 1)
    }

    /// Negates rows with a leading `-1`, then columns with a top `-1`.
    pub fn normalized(&self) -> HadamardMatrix {
        let mut e = self.entries.clone();
        for row in e.iter_mut() {
            if row[0] == -1 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
        let m = e.len();
        for j in 0..m {
            if e[0][j] == -1 {
                for row in e.iter_mut() {
                    row[j] = -row[j];
                }
            }
        }
        HadamardMatrix { entries: e }
    }

    /// `P H U`.
    pub fn transform(&self, p: &MonomialMatrix, u: &MonomialMatrix) -> Vec<Vec<i8>> {
        let m = self.order();
        let mut ph = vec![vec![0i8; m]; m];
        for i in 0..m {
            for j in 0..m {
                ph[i][j] = p.signs[i] * self.entries[p.perm[i]][j];
            }
        }
        ph.iter().map(|r| u.apply_row(r)).collect()
    }

    /// Text form: `order=<m>` then one line of `+`/`-` per row.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("order={}\n", self.order());
        for r in &self.entries {
            s.extend(r.iter().map(|&x| if x == 1 { '+' } else { '-' }));
            s.push('\n');
        }
        s
    }

    /// Accepts `-` or `−` for negative entries and `#` comment lines.
    pub fn parse(text: &str) -> Result<HadamardMatrix> {
        let mut order = None;
        let mut rows = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if order.is_none() {
                let n = line
                    .strip_prefix("order=")
                    .and_then(|v| v.trim().parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(idx + 1, "expected `order=<int>`"))?;
                order = Some(n);
                continue;
            }
            let row = line
                .chars()
                .map(|c| match c {
                    '+' => Ok(1i8),
                    '-' | '−' => Ok(-1i8),
                    other => Err(Error::parse(idx + 1, format!("invalid entry {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if Some(row.len()) != order {
                return Err(Error::parse(idx + 1, format!("row has {} entries", row.len())));
            }
            rows.push(row);
        }
        let order = order.ok_or_else(|| Error::parse(1, "missing header"))?;
        if rows.len() != order {
            return Err(Error::parse(0, format!("expected {order} rows, found {}", rows.len())));
        }
        HadamardMatrix::new(rows)
    }
}

fn legendre(a: i64, q: i64) -> i8 {
    let a = a.rem_euclid(q);
    if a == 0 {
        0
    } else if (1..q).any(|x| (x * x) % q == a) {
        1
    } else {
        -1
    }
}

/// Paley construction of the first kind for a prime `q ≡ 3 (mod 4)`:
/// `I + S` with `S` the bordered quadratic-residue matrix, then normalized.
pub fn paley_hadamard(q: usize) -> Result<HadamardMatrix> {
    let is_prime = q >= 3 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0);
    if !is_prime || q % 4 != 3 || q + 1 > MAX_LEN {
        return Err(Error::param(format!(
            "Paley construction needs a prime q ≡ 3 (mod 4) with q + 1 <= {MAX_LEN}, got {q}"
        )));
    }
    let n = q + 1;
    let mut e = vec![vec![0i8; n]; n];
    for j in 1..n {
        e[0][j] = 1;
        e[j][0] = -1;
    }
    for i in 0..q {
        for j in 0..q {
            e[i + 1][j + 1] = legendre(j as i64 - i as i64, q as i64);
        }
    }
    for (i, row) in e.iter_mut().enumerate() {
        row[i] += 1;
    }
    Ok(HadamardMatrix::new(e)?.normalized())
}

/// The normalized Hadamard matrix of order 12.
pub fn paley_hadamard_12() -> HadamardMatrix {
    paley_hadamard(11).expect("11 is a prime congruent to 3 mod 4")
}

/// `-1 ↦ 1`, `+1 ↦ 0`, coordinatewise.
pub fn kappa(v: &[i8]) -> Result<Vertex> {
    if v.iter().any(|&x| !is_sign(x)) {
        return Err(Error::param("kappa needs a ±1 vector"));
    }
    let bits = v
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == -1)
        .map(|(i, _)| 1u32 << i)
        .sum();
    Vertex::new(bits, v.len())
}

pub fn kappa_inverse(a: Vertex) -> Vec<i8> {
    (1..=a.len()).map(|i| if a.entry(i) { -1 } else { 1 }).collect()
}

/// `{κ(r) : r a row of H or -H}`.
pub fn code_of(h: &HadamardMatrix) -> Code {
    let m = h.order();
    let mut words = Vec::with_capacity(2 * m);
    for r in h.entries() {
        let w = kappa(r).expect("Hadamard rows are ±1");
        words.push(w);
        words.push(w.complement());
    }
    Code::new(m, words).expect("rows have the matrix order")
}

/// `U = U_D U_σ`: `M[i][σ(i)] = u_i`, all other entries zero. Row vectors
/// are multiplied on the right, so `(vU)_{σ(i)} = v_i u_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    pub signs: Vec<i8>,
    pub perm: Vec<usize>,
}

impl MonomialMatrix {
    pub fn new(signs: Vec<i8>, perm: Vec<usize>) -> Result<Self> {
        let m = signs.len();
        let mut seen = vec![false; m];
        if perm.len() != m || signs.iter().any(|&s| !is_sign(s)) {
            return Err(Error::param("monomial needs m signs and m images"));
        }
        for &p in &perm {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::param(format!("not a permutation: {perm:?}")));
            }
        }
        Ok(MonomialMatrix { signs, perm })
    }

    pub fn identity(m: usize) -> Self {
        MonomialMatrix {
            signs: vec![1; m],
            perm: (0..m).collect(),
        }
    }

    pub fn negated_identity(m: usize) -> Self {
        MonomialMatrix {
            signs: vec![-1; m],
            perm: (0..m).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.signs.len()
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = self.order();
        MonomialMatrix {
            signs: (0..m).map(|i| self.signs[i] * other.signs[self.perm[i]]).collect(),
            perm: (0..m).map(|i| other.perm[self.perm[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let m = self.order();
        let mut signs = vec![1i8; m];
        let mut perm = vec![0usize; m];
        for i in 0..m {
            signs[self.perm[i]] = self.signs[i];
            perm[self.perm[i]] = i;
        }
        MonomialMatrix { signs, perm }
    }

    /// `v U`.
    pub fn apply_row(&self, v: &[i8]) -> Vec<i8> {
        let mut out = vec![0i8; v.len()];
        for i in 0..v.len() {
            out[self.perm[i]] = v[i] * self.signs[i];
        }
        out
    }

    pub fn to_matrix(&self) -> Vec<Vec<i32>> {
        let m = self.order();
        let mut a = vec![vec![0i32; m]; m];
        for i in 0..m {
            a[i][self.perm[i]] = self.signs[i] as i32;
        }
        a
    }

    /// Reads back a matrix with exactly one `±1` in each row and column.
    pub fn from_matrix(a: &[Vec<i32>]) -> Option<Self> {
        let m = a.len();
        let mut signs = Vec::with_capacity(m);
        let mut perm = Vec::with_capacity(m);
        for row in a {
            let nz: Vec<usize> = (0..row.len()).filter(|&j| row[j] != 0).collect();
            if nz.len() != 1 || !(row[nz[0]] == 1 || row[nz[0]] == -1) {
                return None;
            }
            signs.push(row[nz[0]] as i8);
            perm.push(nz[0]);
        }
        MonomialMatrix::new(signs, perm).ok()
    }
}

/// Flip coordinate `i` iff `u_i = -1`, then permute by `σ`.
pub fn theta(u: &MonomialMatrix) -> GraphAutomorphism {
    let flips = u
        .signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == -1)
        .map(|(i, _)| 1u32 << i)
        .sum();
    GraphAutomorphism::new(u.order(), flips, &u.perm).expect("monomial data is valid")
}

pub fn theta_inverse(x: &GraphAutomorphism) -> MonomialMatrix {
    let m = x.degree();
    MonomialMatrix {
        signs: (0..m)
            .map(|i| if (x.translation() >> i) & 1 == 1 { -1 } else { 1 })
            .collect(),
        perm: x.perm().iter().map(|&p| p as usize).collect(),
    }
}

/// A pair with `P H U = H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixAutomorphism {
    pub p: MonomialMatrix,
    pub u: MonomialMatrix,
}

pub fn is_matrix_automorphism(p: &MonomialMatrix, u: &MonomialMatrix, h: &HadamardMatrix) -> bool {
    p.order() == h.order() && u.order() == h.order() && h.transform(p, u) == h.entries()
}

/// With `U = θ⁻¹(x)`, computes `P = H U⁻¹ H⁻¹ = (1/m) H U⁻¹ Hᵀ` exactly and
/// checks that it is monomial and that `P H U = H`.
pub fn transfer_from_code_automorphism(x: &GraphAutomorphism, h: &HadamardMatrix) -> Result<MatrixAutomorphism> {
    let m = h.order();
    if x.degree() != m {
        return Err(Error::param("automorphism degree differs from the matrix order"));
    }
    let code = code_of(h);
    if let Some(&w) = code.masks().iter().find(|&&w| !code.contains_mask(x.apply_mask(w))) {
        return Err(Error::Precondition(format!(
            "{x} moves codeword {} off the code",
            Vertex::new(w, m)?
        )));
    }
    let u = theta_inverse(x);
    let uinv = u.inverse();
    let hu: Vec<Vec<i8>> = h.entries().iter().map(|r| uinv.apply_row(r)).collect();
    let mut scaled = vec![vec![0i32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let dot: i32 = (0..m).map(|k| (hu[i][k] * h.get(j, k)) as i32).sum();
            if dot % m as i32 != 0 {
                return Err(Error::Contradiction(format!(
                    "entry ({}, {}) of H U⁻¹ Hᵀ is {dot}, not a multiple of {m}",
                    i + 1,
                    j + 1
                )));
            }
            scaled[i][j] = dot / m as i32;
        }
    }
    let p = MonomialMatrix::from_matrix(&scaled).ok_or_else(|| {
        Error::Contradiction("H U⁻¹ H⁻¹ is not a monomial matrix".into())
    })?;
    if !is_matrix_automorphism(&p, &u, h) {
        return Err(Error::Contradiction("P H U differs from H".into()));
    }
    Ok(MatrixAutomorphism { p, u })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exact determinant by fraction-free elimination.
    fn bareiss_det(a: &[Vec<i8>]) -> i128 {
        let n = a.len();
        let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(s) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                    return 0;
                };
                m.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    #[test]
    fn paley_12_is_normalized_hadamard() {
        let h = paley_hadamard_12();
        assert_eq!(h.order(), 12);
        assert!(h.is_normalized());
        for i in 1..12 {
            assert_eq!(h.row(i).iter().filter(|&&x| x == 1).count(), 6);
        }
        assert_eq!(bareiss_det(h.entries()).abs(), 12i128.pow(6));
        assert!(paley_hadamard(13).is_err());
        assert_eq!(paley_hadamard(7).unwrap().order(), 8);
    }

    #[test]
    fn kappa_basics() {
        assert_eq!(kappa(&[1, 1, 1]).unwrap().bits(), 0);
        let v = [1i8, -1, -1, 1];
        let neg: Vec<i8> = v.iter().map(|x| -x).collect();
        assert_eq!(kappa(&neg).unwrap(), kappa(&v).unwrap().complement());
        assert_eq!(kappa_inverse(kappa(&v).unwrap()), v.to_vec());
        assert!(kappa(&[1, 0]).is_err());
        assert_eq!(kappa(paley_hadamard_12().row(1)).unwrap().weight(), 6);
    }

    #[test]
    fn hadamard_code_parameters() {
        let c = code_of(&paley_hadamard_12());
        assert_eq!(c.size(), 24);
        assert_eq!(c.min_distance().unwrap(), 6);
        assert!(c.is_antipodal());
    }

    #[test]
    fn monomial_group_laws() {
        let a = MonomialMatrix::new(vec![1, -1, 1], vec![2, 0, 1]).unwrap();
        let b = MonomialMatrix::new(vec![-1, -1, 1], vec![1, 0, 2]).unwrap();
        let ab = a.compose(&b);
        let am = a.to_matrix();
        let bm = b.to_matrix();
        let prod: Vec<Vec<i32>> = (0..3)
            .map(|i| (0..3).map(|j| (0..3).map(|k| am[i][k] * bm[k][j]).sum()).collect())
            .collect();
        assert_eq!(ab.to_matrix(), prod);
        assert_eq!(a.compose(&a.inverse()), MonomialMatrix::identity(3));
        assert_eq!(MonomialMatrix::from_matrix(&am), Some(a.clone()));
        let v = [1i8, -1, -1];
        assert_eq!(a.apply_row(&b.apply_row(&v)), b.compose(&a).apply_row(&v));
        assert!(MonomialMatrix::new(vec![1, 1], vec![0, 0]).is_err());
    }

    #[test]
    fn theta_matches_vector_action() {
        let u = MonomialMatrix::new(vec![-1, 1, -1, 1], vec![3, 1, 0, 2]).unwrap();
        let v = [1i8, -1, -1, 1];
        let lhs = kappa(&u.apply_row(&v)).unwrap();
        let rhs = theta(&u).apply(kappa(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(theta_inverse(&theta(&u)), u);
        assert!(theta(&MonomialMatrix::identity(4)).is_identity());
    }

    #[test]
    fn trivial_matrix_automorphisms() {
        let h = paley_hadamard_12();
        assert!(is_matrix_automorphism(&MonomialMatrix::identity(12), &MonomialMatrix::identity(12), &h));
        assert!(is_matrix_automorphism(
            &MonomialMatrix::negated_identity(12),
            &MonomialMatrix::negated_identity(12),
            &h
        ));
        let t = transfer_from_code_automorphism(&GraphAutomorphism::identity(12), &h).unwrap();
        assert_eq!(t.p, MonomialMatrix::identity(12));
        assert_eq!(t.u, MonomialMatrix::identity(12));
    }

    #[test]
    fn non_stabilizing_element_is_rejected() {
        let h = paley_hadamard_12();
        let x = GraphAutomorphism::translation_by(12, 1);
        assert!(matches!(transfer_from_code_automorphism(&x, &h), Err(Error::Precondition(_))));
    }

    #[test]
    fn matrix_file_round_trip() {
        let h = paley_hadamard_12();
        let text = h.to_file_string();
        assert!(text.starts_with("order=12\n++++++++++++\n"));
        assert_eq!(HadamardMatrix::parse(&text).unwrap(), h);
        let unicode = text.replace('-', "−");
        assert_eq!(HadamardMatrix::parse(&unicode).unwrap(), h);
        assert!(HadamardMatrix::parse("order=2\n++\n+x\n").is_err());
        assert!(HadamardMatrix::parse("order=2\n++\n++\n").is_err());
    }
}
