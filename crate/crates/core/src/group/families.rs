use super::perm::{from_permutation_generators, Permutation};
use super::product::{direct_product, quotient_group, semidirect_product, Action};
use super::subgroup::subgroup_generated;
use super::{GroupTable, Provenance};
use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};

/// Parametrised families with closed-form multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    /// Generalised quaternion group of the given order `2^m`, `m >= 3`.
    GeneralizedQuaternion(usize),
    /// `<a, b | a^p = b^(2^k) = 1, a^b = a^-1>` for an odd prime `p`.
    CpRtimesC2n { p: usize, k: u32 },
    /// The affine group `GF(q) ⋊ GF(q)^×` of order `q(q-1)`.
    FieldFrobenius(usize),
    ElementaryAbelian { p: usize, r: u32 },
    /// `<a, b | a^m = b^n = 1, b a b^-1 = a^r>`.
    Metacyclic { m: usize, n: usize, r: usize },
}

pub fn make_named_family(family: Family) -> Result<GroupTable> {
    match family {
        Family::Cyclic(n) => cyclic(n),
        Family::Dihedral(n) => dihedral(n),
        Family::GeneralizedQuaternion(order) => quaternion(order),
        Family::CpRtimesC2n { p, k } => {
            if p % 2 == 0 || !is_prime(p as u64) {
                return Err(Error::Parameter(format!("cp_rtimes_c2n needs an odd prime, got {p}")));
            }
            if k == 0 || k > 20 {
                return Err(Error::Parameter(format!("cp_rtimes_c2n needs k >= 1, got {k}")));
            }
            let t = metacyclic(p, 1 << k, p - 1)?;
            Ok(t.with_provenance(Provenance::Family {
                name: "cpc2n".into(),
                params: vec![p as u64, k as u64],
            }))
        }
        Family::FieldFrobenius(q) => field_frobenius(q),
        Family::ElementaryAbelian { p, r } => elementary_abelian(p, r),
        Family::Metacyclic { m, n, r } => metacyclic(m, n, r),
    }
}

fn fam(name: &str, params: &[usize]) -> Provenance {
    Provenance::Family {
        name: name.into(),
        params: params.iter().map(|&p| p as u64).collect(),
    }
}

fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Parameter("cyclic group of order 0".into()));
    }
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
    GroupTable::from_flat(n, mul, fam("cyclic", &[n]))
}

/// Elements `r^i s^j` at index `i + n j`.
fn dihedral(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Parameter("dihedral group needs n >= 1".into()));
    }
    let size = 2 * n;
    let mut mul = Vec::with_capacity(size * size);
    for x in 0..size {
        let (i, a) = (x % n, x / n);
        for y in 0..size {
            let (k, b) = (y % n, y / n);
            let rot = if a == 0 { (i + k) % n } else { (i + n - k) % n };
            mul.push((rot + n * ((a + b) % 2)) as u32);
        }
    }
    GroupTable::from_flat(size, mul, fam("dihedral", &[n]))
}

/// Elements `x^i y^j` (`i < 2N`, `j < 2`) with `y^2 = x^N`, `x^y = x^-1`.
fn quaternion(order: usize) -> Result<GroupTable> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "generalised quaternion order must be 2^m with m >= 3, got {order}"
        )));
    }
    let two_n = order / 2;
    let half = two_n / 2;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (i, a) = (x % two_n, x / two_n);
        for y in 0..order {
            let (k, b) = (y % two_n, y / two_n);
            let idx = match (a, b) {
                (0, _) => (i + k) % two_n + two_n * b,
                (1, 0) => (i + two_n - k) % two_n + two_n,
                _ => (i + two_n - k + half) % two_n,
            };
            mul.push(idx as u32);
        }
    }
    GroupTable::from_flat(order, mul, fam("quaternion", &[order]))
}

/// Elements `a^i b^j` at index `i + m j`, with `b a b^-1 = a^r`.
pub(crate) fn metacyclic(m: usize, n: usize, r: usize) -> Result<GroupTable> {
    if m == 0 || n == 0 {
        return Err(Error::Parameter("metacyclic orders must be positive".into()));
    }
    let r = r % m.max(1);
    let gcd = num_integer::gcd(r.max(1), m);
    let mut rn = 1usize;
    for _ in 0..n {
        rn = rn * r % m;
    }
    if m > 1 && (gcd != 1 || rn != 1 % m) {
        return Err(Error::Parameter(format!(
            "metacyclic: r = {r} must be a unit with r^{n} = 1 mod {m}"
        )));
    }
    let mut rpow = vec![1 % m; n];
    for j in 1..n {
        rpow[j] = rpow[j - 1] * r % m;
    }
    let size = m * n;
    let mut mul = Vec::with_capacity(size * size);
    for x in 0..size {
        let (i, j) = (x % m, x / m);
        for y in 0..size {
            let (k, l) = (y % m, y / m);
            let a = (i + k * rpow[j]) % m;
            mul.push((a + m * ((j + l) % n)) as u32);
        }
    }
    GroupTable::from_flat(size, mul, fam("metacyclic", &[m, n, r]))
}

fn elementary_abelian(p: usize, r: u32) -> Result<GroupTable> {
    if !is_prime(p as u64) {
        return Err(Error::Parameter(format!("elementary abelian needs a prime, got {p}")));
    }
    let n = p.checked_pow(r).ok_or_else(|| Error::Parameter("order overflow".into()))?;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(add_vectors(a, b, p, r) as u32);
        }
    }
    GroupTable::from_flat(n, mul, fam("elemab", &[p, r as usize]))
}

/// Componentwise sum of base-`p` digit vectors.
fn add_vectors(a: usize, b: usize, p: usize, r: u32) -> usize {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..r {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// `GF(p^r)` with elements as base-`p` coefficient vectors (constant term
/// least significant), reduced by the first monic irreducible polynomial in
/// that ordering.
struct FiniteField {
    p: usize,
    r: u32,
    q: usize,
    mul: Vec<usize>,
}

impl FiniteField {
    fn new(q: usize) -> Result<Self> {
        let (p, r) = prime_power(q as u64)
            .ok_or_else(|| Error::Parameter(format!("{q} is not a prime power")))?;
        let (p, r) = (p as usize, r);
        let modulus = first_irreducible(p, r as usize);
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = poly_mul_mod(a, b, p, &modulus);
            }
        }
        Ok(FiniteField { p, r, q, mul })
    }

    fn add(&self, a: usize, b: usize) -> usize {
        add_vectors(a, b, self.p, self.r)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}

fn digits(mut x: usize, p: usize, len: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(x % p);
        x /= p;
    }
    d
}

/// Coefficients (low to high) of the first monic irreducible of degree `r`.
fn first_irreducible(p: usize, r: usize) -> Vec<usize> {
    if r == 1 {
        return vec![0, 1];
    }
    for low in 0..p.pow(r as u32) {
        let mut f = digits(low, p, r);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    // g is monic.
    let mut rem = f.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dg;
        for (i, &c) in g.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + p - (lead * c) % p) % p;
        }
        rem.pop();
    }
    rem
}

fn poly_mul_mod(a: usize, b: usize, p: usize, modulus: &[usize]) -> usize {
    let r = modulus.len() - 1;
    let da = digits(a, p, r);
    let db = digits(b, p, r);
    let mut prod = vec![0; 2 * r];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let rem = poly_rem(&prod, modulus, p);
    rem.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Affine maps `x -> a x + b` over `GF(q)`; `(a1, b1)(a2, b2)` applies the
/// left factor first. Index is `b + q * slot(a)` with `slot(1) = 0`, so the
/// multiplicative complement `{(a, 0)}` sits at multiples of `q`.
fn field_frobenius(q: usize) -> Result<GroupTable> {
    if q < 3 {
        return Err(Error::Parameter(format!("field_frobenius needs q >= 3, got {q}")));
    }
    let field = FiniteField::new(q)?;
    let units: Vec<usize> = std::iter::once(1).chain(2..q).collect();
    let mut slot = vec![usize::MAX; q];
    for (i, &u) in units.iter().enumerate() {
        slot[u] = i;
    }
    let size = q * (q - 1);
    let mut mul = Vec::with_capacity(size * size);
    for x in 0..size {
        let (b1, a1) = (x % q, units[x / q]);
        for y in 0..size {
            let (b2, a2) = (y % q, units[y / q]);
            let a = field.mul(a1, a2);
            let b = field.add(field.mul(a2, b1), b2);
            mul.push((b + q * slot[a]) as u32);
        }
    }
    GroupTable::from_flat(size, mul, fam("frobenius", &[q]))
}

pub fn symmetric_group(n: usize) -> Result<GroupTable> {
    let gens = match n {
        0 | 1 => vec![],
        2 => vec![vec![1, 0]],
        _ => vec![
            (0..n).map(|i| (i + 1) % n).collect(),
            (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect(),
        ],
    };
    Ok(from_permutation_generators(n, &gens)?.with_provenance(fam("sym", &[n])))
}

pub fn alternating_group(n: usize) -> Result<GroupTable> {
    // 3-cycles (0 1 i) generate A_n.
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]).map(|p| p.images()))
        .collect::<Result<_>>()?;
    Ok(from_permutation_generators(n, &gens)?.with_provenance(fam("alt", &[n])))
}

/// Right action of `d x d` matrices over `GF(p)` on the nonzero row vectors.
fn matrix_perms(p: usize, d: usize, mats: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let total = p.pow(d as u32);
    let point = |v: usize| v - 1;
    mats.iter()
        .map(|m| {
            (1..total)
                .map(|v| {
                    let row = digits(v, p, d);
                    let img: Vec<usize> = (0..d).map(|j| (0..d).map(|i| row[i] * m[i][j]).sum::<usize>() % p).collect();
                    point(img.iter().rev().fold(0, |acc, &c| acc * p + c))
                })
                .collect()
        })
        .collect()
}

/// `SL(2, p)` acting on the `p^2 - 1` nonzero vectors of `GF(p)^2`.
pub fn special_linear_2(p: usize) -> Result<GroupTable> {
    if !is_prime(p as u64) {
        return Err(Error::Parameter(format!("sl2 needs a prime, got {p}")));
    }
    let gens = matrix_perms(p, 2, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]]);
    Ok(from_permutation_generators(p * p - 1, &gens)?.with_provenance(fam("sl2", &[p])))
}

/// `GL(3, 2) = PSL(3, 2)` acting on the seven nonzero vectors of `GF(2)^3`.
pub fn general_linear_3_2() -> Result<GroupTable> {
    let mut mats = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = vec![vec![0; 3]; 3];
                for (k, row) in m.iter_mut().enumerate() {
                    row[k] = 1;
                }
                m[i][j] = 1;
                mats.push(m);
            }
        }
    }
    let gens = matrix_perms(2, 3, &mats);
    Ok(from_permutation_generators(7, &gens)?.with_provenance(fam("psl3_2", &[])))
}

/// `C_p^r ⋊ C_m` where the generator of `C_m` acts on row vectors by
/// `v ↦ v·matrix` over `GF(p)`. The matrix must satisfy `matrix^m = 1`.
pub fn elementary_abelian_by_cyclic(p: usize, matrix: &[Vec<usize>], m: usize) -> Result<GroupTable> {
    let (v, c, act) = matrix_action(p, matrix, m)?;
    let rows: Vec<String> = matrix
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    let prov = Provenance::Derived(format!("sdp (elemab {p} {}) (cyclic {m}) matrix {}", v.order().ilog(p), rows.join(";")));
    Ok(semidirect_product(&v, &c, &act)?.with_provenance(prov))
}

/// The factors `C_p^r`, `C_m` and the action behind
/// [`elementary_abelian_by_cyclic`].
pub fn matrix_action(p: usize, matrix: &[Vec<usize>], m: usize) -> Result<(GroupTable, GroupTable, Action)> {
    let r = matrix.len();
    if r == 0 || matrix.iter().any(|row| row.len() != r) {
        return Err(Error::Parameter("action matrix must be square and non-empty".into()));
    }
    let v = elementary_abelian(p, r as u32)?;
    let c = cyclic(m)?;
    let image: Vec<usize> = (0..v.order())
        .map(|x| {
            let row = digits(x, p, r);
            (0..r)
                .rev()
                .fold(0, |acc, j| acc * p + (0..r).map(|i| row[i] * matrix[i][j]).sum::<usize>() % p)
        })
        .collect();
    let act = Action::from_generators(&v, &c, &[(1 % m, image)])?;
    Ok((v, c, act))
}

/// `C2^2 ⋊ C4`, the generator swapping the two basis vectors.
pub fn c2_squared_rtimes_c4() -> Result<GroupTable> {
    Ok(elementary_abelian_by_cyclic(2, &[vec![0, 1], vec![1, 0]], 4)?.with_provenance(fam("c2sq_c4", &[])))
}

/// `C3^2 ⋊ C4` with the faithful irreducible action of order 4.
pub fn c3_squared_rtimes_c4() -> Result<GroupTable> {
    Ok(elementary_abelian_by_cyclic(3, &[vec![0, 2], vec![1, 0]], 4)?.with_provenance(fam("c3sq_c4", &[])))
}

/// `C2^3 ⋊ C7`, the generator acting as multiplication by `x` on
/// `GF(8) = GF(2)[x]/(x^3 + x + 1)` in the basis `1, x, x^2`.
pub fn c2_cubed_rtimes_c7() -> Result<GroupTable> {
    let m = [vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]];
    Ok(elementary_abelian_by_cyclic(2, &m, 7)?.with_provenance(fam("c2cube_c7", &[])))
}

/// The modular group `M4(2) = <a, b | a^8 = b^2 = 1, a^b = a^5>`.
pub fn modular_group_16() -> Result<GroupTable> {
    Ok(metacyclic(8, 2, 5)?.with_provenance(fam("m4_2", &[])))
}

/// The central product `C4 ∘ D4`: `C4 × D4` with the two central involutions
/// identified.
pub fn central_product_c4_d4() -> Result<GroupTable> {
    let c4 = cyclic(4)?;
    let d4 = dihedral(4)?;
    let prod = direct_product(&c4, &d4);
    // (2, r^2): the central involutions of both factors.
    let z = 2 * d4.order() + 2;
    let n = subgroup_generated(&prod, &[z]);
    let q = quotient_group(&prod, &n)?;
    Ok(q.group.with_provenance(fam("c4_central_d4", &[])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let cases = [
            (Family::Cyclic(7), 7),
            (Family::Dihedral(3), 6),
            (Family::Dihedral(1), 2),
            (Family::GeneralizedQuaternion(16), 16),
            (Family::CpRtimesC2n { p: 5, k: 3 }, 40),
            (Family::FieldFrobenius(4), 12),
            (Family::FieldFrobenius(5), 20),
            (Family::FieldFrobenius(9), 72),
            (Family::ElementaryAbelian { p: 3, r: 2 }, 9),
        ];
        for (f, n) in cases {
            assert_eq!(make_named_family(f).unwrap().order(), n, "{f:?}");
        }
    }

    #[test]
    fn dihedral_3_is_non_abelian() {
        let g = make_named_family(Family::Dihedral(3)).unwrap();
        assert!(!g.is_abelian());
    }

    #[test]
    fn quaternion_has_single_involution() {
        let g = make_named_family(Family::GeneralizedQuaternion(8)).unwrap();
        assert_eq!(g.element_orders().filter(|&o| o == 2).count(), 1);
        assert_eq!(g.element_orders().filter(|&o| o == 4).count(), 6);
    }

    #[test]
    fn invalid_parameters() {
        assert!(make_named_family(Family::CpRtimesC2n { p: 4, k: 1 }).is_err());
        assert!(make_named_family(Family::CpRtimesC2n { p: 2, k: 1 }).is_err());
        assert!(make_named_family(Family::FieldFrobenius(6)).is_err());
        assert!(make_named_family(Family::FieldFrobenius(2)).is_err());
        assert!(make_named_family(Family::GeneralizedQuaternion(4)).is_err());
        assert!(make_named_family(Family::GeneralizedQuaternion(12)).is_err());
        assert!(make_named_family(Family::ElementaryAbelian { p: 6, r: 2 }).is_err());
        assert!(make_named_family(Family::Metacyclic { m: 7, n: 3, r: 3 }).is_err());
    }

    #[test]
    fn first_irreducibles() {
        // x^2 + 1 over GF(3); x^2 + x + 1 over GF(2); x^3 + x + 1 over GF(2).
        assert_eq!(first_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn matrix_groups() {
        assert_eq!(special_linear_2(3).unwrap().order(), 24);
        assert_eq!(general_linear_3_2().unwrap().order(), 168);
        assert_eq!(symmetric_group(4).unwrap().order(), 24);
        assert_eq!(alternating_group(5).unwrap().order(), 60);
        assert_eq!(modular_group_16().unwrap().order(), 16);
        assert_eq!(central_product_c4_d4().unwrap().order(), 16);
    }
}
