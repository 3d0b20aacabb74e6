//! Coefficients `c~_ij(l)` of the inverse quantum Cartan matrix.
//!
//! The quantum Cartan matrix is `C(z)_ii = z + 1/z` and `C(z)_ij = c_ij` for
//! `i != j`. Writing `C~(z) = C(z)^{-1} = sum_{l >= 1} c~(l) z^l` and reading
//! off the coefficient of `z^m` in row `i` of `C(z) C~(z) = Id` gives
//!
//! ```text
//! c~_ij(m-1) + c~_ij(m+1) - sum_{k ~ i} c~_kj(m) = delta_ij delta_{m,0}
//! ```
//!
//! so `c~_ij(m+1) = delta_ij delta_{m,0} - c~_ij(m-1) + sum_{k ~ i} c~_kj(m)`
//! with `c~(l) = 0` for `l <= 0`. This is the recurrence used below.

use std::fmt;

use serde::Serialize;

use crate::ar_quiver::{DynkinQuiver, Happel, HeightFunction};
use crate::error::{Error, Result};
use crate::root_system::CartanData;

/// Exact table of `c~_ij(l)` for `1 <= l <= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTildeTable {
    cd: CartanData,
    order: usize,
    // values[((i-1)*n + (j-1)) * order + (l-1)]
    values: Vec<i64>,
}

impl CTildeTable {
    pub fn cartan(&self) -> &CartanData {
        &self.cd
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn slot(&self, i: usize, j: usize, l: usize) -> usize {
        let n = self.cd.rank();
        ((i - 1) * n + (j - 1)) * self.order + (l - 1)
    }

    /// `c~_ij(l)`; zero for `l <= 0`. Panics if `l` exceeds the truncation order.
    pub fn get(&self, i: usize, j: usize, l: i64) -> i64 {
        if l <= 0 {
            return 0;
        }
        let l = l as usize;
        assert!(l <= self.order, "c~({l}) requested from a table of order {}", self.order);
        self.values[self.slot(i, j, l)]
    }

    pub fn try_get(&self, i: usize, j: usize, l: i64) -> Option<i64> {
        if l > self.order as i64 {
            None
        } else {
            Some(self.get(i, j, l))
        }
    }

    /// The row `c~_ij(1..=order)`.
    pub fn series(&self, i: usize, j: usize) -> &[i64] {
        let start = self.slot(i, j, 1);
        &self.values[start..start + self.order]
    }

    /// Builds a table from raw values laid out as `raw[i-1][j-1][l-1]`.
    /// Intended for feeding externally produced (or deliberately corrupted)
    /// data to [`check_ctilde_identities`].
    pub fn from_raw(cd: CartanData, raw: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let n = cd.rank();
        let order = raw.first().and_then(|r| r.first()).map_or(0, Vec::len);
        if order == 0 {
            return Err(Error::TableTooShort { needed: 1, got: 0 });
        }
        if raw.len() != n || raw.iter().any(|r| r.len() != n || r.iter().any(|s| s.len() != order)) {
            return Err(Error::OutOfRange("ragged c~ table".into()));
        }
        let values = raw.into_iter().flatten().flatten().collect();
        Ok(CTildeTable { cd, order, values })
    }

    /// Continues the recurrence from this table's own last two layers up to `order`.
    fn extended(&self, order: usize) -> CTildeTable {
        if order <= self.order {
            return self.clone();
        }
        let n = self.cd.rank();
        let mut layers: Vec<Vec<Vec<i64>>> = (1..=self.order)
            .map(|l| (1..=n).map(|i| (1..=n).map(|j| self.get(i, j, l as i64)).collect()).collect())
            .collect();
        while layers.len() < order {
            let m = layers.len();
            let prev = if m >= 2 { Some(&layers[m - 2]) } else { None };
            let next = step(&self.cd, &layers[m - 1], prev);
            layers.push(next);
        }
        from_layers(self.cd.clone(), layers)
    }
}

fn from_layers(cd: CartanData, layers: Vec<Vec<Vec<i64>>>) -> CTildeTable {
    let n = cd.rank();
    let order = layers.len();
    let mut values = vec![0i64; n * n * order];
    for (l, layer) in layers.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                values[(i * n + j) * order + l] = layer[i][j];
            }
        }
    }
    CTildeTable { cd, order, values }
}

/// One step of the recurrence: given `c~(m)` (`cur`) and `c~(m-1)` (`prev`),
/// returns `c~(m+1)` for `m >= 1`.
fn step(cd: &CartanData, cur: &[Vec<i64>], prev: Option<&Vec<Vec<i64>>>) -> Vec<Vec<i64>> {
    let n = cd.rank();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    let back = prev.map_or(0, |p| p[i - 1][j - 1]);
                    let around: i64 = cd.neighbors(i).iter().map(|&k| cur[k - 1][j - 1]).sum();
                    around - back
                })
                .collect()
        })
        .collect()
}

/// Computes `c~_ij(l)` for all `i, j` and `1 <= l <= order` by the recurrence.
pub fn ctilde_table(cd: &CartanData, order: usize) -> Result<CTildeTable> {
    if order < 1 {
        return Err(Error::TableTooShort { needed: 1, got: order });
    }
    let n = cd.rank();
    let first: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut layers = vec![first];
    while layers.len() < order {
        let m = layers.len();
        let prev = if m >= 2 { Some(&layers[m - 2]) } else { None };
        let next = step(cd, &layers[m - 1], prev);
        layers.push(next);
    }
    Ok(from_layers(cd.clone(), layers))
}

/// Table of the default order `2h`.
pub fn default_table(cd: &CartanData) -> CTildeTable {
    ctilde_table(cd, 2 * cd.coxeter_number()).expect("2h >= 1")
}

/// `c~_ij(l)` through the Coxeter element of `(q, xi)`:
/// `(tau^{(l + xi_i - xi_j - 1)/2} gamma_i, varpi_j)` when `l + eps_i + eps_j + 1`
/// is even, and `0` otherwise.
pub fn ctilde_coxeter(q: &DynkinQuiver, xi: &HeightFunction, i: usize, j: usize, l: i64) -> Result<i64> {
    let frame = Happel::new(q.clone(), xi.clone())?;
    ctilde_coxeter_in(&frame, i, j, l)
}

/// Same as [`ctilde_coxeter`] with a precomputed frame.
pub fn ctilde_coxeter_in(frame: &Happel, i: usize, j: usize, l: i64) -> Result<i64> {
    if l < 1 {
        return Err(Error::OutOfRange(format!("l = {l} must be at least 1")));
    }
    let cd = frame.quiver().cartan();
    cd.check_vertex(i)?;
    cd.check_vertex(j)?;
    let parity = l + i64::from(cd.parity(i)) + i64::from(cd.parity(j)) + 1;
    if parity % 2 != 0 {
        return Ok(0);
    }
    let xi = frame.height();
    let twice = l + xi.get(i) - xi.get(j) - 1;
    debug_assert_eq!(twice % 2, 0);
    let v = frame.tau(frame.gamma(i), twice / 2);
    Ok(v.pair_fundamental(j))
}

/// One failed instance of a structural identity of the `c~` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Identity number, 1 through 8.
    pub identity: u8,
    pub name: &'static str,
    pub i: usize,
    pub j: usize,
    pub l: i64,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "identity ({}) {} fails at i={}, j={}, l={}: {}",
            self.identity, self.name, self.i, self.j, self.l, self.detail
        )
    }
}

pub const IDENTITY_NAMES: [&str; 8] = [
    "symmetry",
    "diagram automorphism invariance",
    "period 2h",
    "antisymmetry about 2h",
    "star shift by h",
    "vanishing at multiples of h",
    "positivity below h",
    "negativity between h and 2h",
];

/// Checks the eight structural identities of `c~` on a table of order at
/// least `2h`. Periodicity is checked against the table continued to `4h` by
/// its own recurrence. Returns the list of violations (empty on success).
pub fn check_ctilde_identities(t: &CTildeTable) -> Result<Vec<Violation>> {
    let cd = t.cartan();
    let h = cd.coxeter_number();
    if t.order() < 2 * h {
        return Err(Error::TableTooShort { needed: 2 * h, got: t.order() });
    }
    let h = h as i64;
    let n = cd.rank();
    let ext = t.extended(4 * h as usize);
    let mut out = Vec::new();
    let mut fail = |identity: u8, i: usize, j: usize, l: i64, detail: String| {
        out.push(Violation { identity, name: IDENTITY_NAMES[identity as usize - 1], i, j, l, detail });
    };
    let order = t.order() as i64;
    for i in 1..=n {
        for j in 1..=n {
            for l in 1..=order {
                let v = t.get(i, j, l);
                let w = t.get(j, i, l);
                if v != w {
                    fail(1, i, j, l, format!("{v} != c~_ji = {w}"));
                }
                let s = t.get(cd.star(i), cd.star(j), l);
                if v != s {
                    fail(2, i, j, l, format!("{v} != c~_(i*,j*) = {s}"));
                }
                if l % h == 0 && v != 0 {
                    fail(6, i, j, l, format!("{v} != 0"));
                }
            }
            for l in 1..=2 * h {
                let v = ext.get(i, j, l);
                let w = ext.get(i, j, l + 2 * h);
                if v != w {
                    fail(3, i, j, l, format!("{v} != c~(l+2h) = {w}"));
                }
            }
            for l in 1..2 * h {
                let v = t.get(i, j, l);
                let w = t.get(i, j, 2 * h - l);
                if v != -w {
                    fail(4, i, j, l, format!("{v} != -c~(2h-l) = {}", -w));
                }
                if l > h && v > 0 {
                    fail(8, i, j, l, format!("{v} > 0"));
                }
            }
            for l in 1..h {
                let v = t.get(i, j, l);
                let w = t.get(j, cd.star(i), h - l);
                if v != w {
                    fail(5, i, j, l, format!("{v} != c~_(j,i*)(h-l) = {w}"));
                }
                if v < 0 {
                    fail(7, i, j, l, format!("{v} < 0"));
                }
            }
        }
    }
    out.sort_by_key(|v| (v.identity, v.i, v.j, v.l));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_cartan, build_cartan_with_parity, Family, LieType, ParityChoice};

    fn cd(f: Family, n: usize) -> CartanData {
        build_cartan(LieType::new(f, n).unwrap())
    }

    /// Power series of `num / den` up to `z^len`, both given by coefficient
    /// lists starting at `z^0`; `den[0]` must be `1`.
    fn series_div(num: &[i64], den: &[i64], len: usize) -> Vec<i64> {
        assert_eq!(den[0], 1);
        let mut out = vec![0i64; len + 1];
        for m in 0..=len {
            let mut acc = num.get(m).copied().unwrap_or(0);
            for k in 1..=m {
                acc -= den.get(k).copied().unwrap_or(0) * out[m - k];
            }
            out[m] = acc;
        }
        out
    }

    #[test]
    fn a1_matches_rational_inverse() {
        // 1/(z + 1/z) = z / (1 + z^2)
        let direct = series_div(&[0, 1], &[1, 0, 1], 6);
        let t = ctilde_table(&cd(Family::A, 1), 6).unwrap();
        assert_eq!(t.series(1, 1), &direct[1..]);
        assert_eq!(t.series(1, 1), &[1, 0, -1, 0, 1, 0]);
    }

    #[test]
    fn a2_matches_rational_inverse() {
        // C~ = z / (z^4 + z^2 + 1) * [[z^2 + 1, z], [z, z^2 + 1]]
        let den = [1, 0, 1, 0, 1];
        let diag = series_div(&[0, 1, 0, 1], &den, 12);
        let off = series_div(&[0, 0, 1], &den, 12);
        let t = ctilde_table(&cd(Family::A, 2), 12).unwrap();
        assert_eq!(t.series(1, 1), &diag[1..]);
        assert_eq!(t.series(2, 2), &diag[1..]);
        assert_eq!(t.series(1, 2), &off[1..]);
        assert_eq!(&t.series(1, 2)[..6], &[0, 1, 0, -1, 0, 0]);
    }

    #[test]
    fn base_layer_is_identity() {
        for ty in LieType::all_up_to_rank(6) {
            let c = build_cartan(ty);
            let t = ctilde_table(&c, 1).unwrap();
            for i in c.vertices() {
                for j in c.vertices() {
                    assert_eq!(t.get(i, j, 1), i64::from(i == j));
                }
            }
        }
        assert!(ctilde_table(&cd(Family::A, 1), 0).is_err());
    }

    #[test]
    fn a2_small_identity_instances() {
        let t = ctilde_table(&cd(Family::A, 2), 6).unwrap();
        assert!(check_ctilde_identities(&t).unwrap().is_empty());
        // item (5) with 1* = 2
        assert_eq!(t.get(1, 1, 1), t.get(1, 2, 2));
        let a1 = ctilde_table(&cd(Family::A, 1), 4).unwrap();
        assert_eq!(a1.get(1, 1, 2), 0);
        assert_eq!(a1.get(1, 1, 4), 0);
    }

    #[test]
    fn identities_need_2h() {
        let t = ctilde_table(&cd(Family::A, 3), 7).unwrap();
        assert!(matches!(check_ctilde_identities(&t), Err(Error::TableTooShort { needed: 8, got: 7 })));
    }

    #[test]
    fn coxeter_route_small_examples() {
        let a2 = cd(Family::A, 2);
        let q = DynkinQuiver::new(a2.clone(), vec![(2, 1)]).unwrap();
        let xi = HeightFunction::new(&q, vec![0, 1]).unwrap();
        assert_eq!(ctilde_coxeter(&q, &xi, 1, 1, 1).unwrap(), 1);
        assert_eq!(ctilde_coxeter(&q, &xi, 2, 2, 1).unwrap(), 1);
        assert_eq!(ctilde_coxeter(&q, &xi, 1, 1, 2).unwrap(), 0);
        assert!(ctilde_coxeter(&q, &xi, 1, 1, 0).is_err());
    }

    /// Deliberately wrong recurrence (sign of the back term flipped).
    fn corrupted_table(c: &CartanData, order: usize) -> CTildeTable {
        let n = c.rank();
        let mut layers: Vec<Vec<Vec<i64>>> =
            vec![(0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()];
        while layers.len() < order {
            let m = layers.len();
            let next = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|j| {
                            let back = if m >= 2 { layers[m - 2][i - 1][j - 1] } else { 0 };
                            let around: i64 =
                                c.neighbors(i).iter().map(|&k| layers[m - 1][k - 1][j - 1]).sum();
                            around + back
                        })
                        .collect()
                })
                .collect();
            layers.push(next);
        }
        from_layers(c.clone(), layers)
    }

    #[test]
    fn corrupted_recurrence_is_reported() {
        let c = cd(Family::A, 3);
        let bad = corrupted_table(&c, 8);
        let violations = check_ctilde_identities(&bad).unwrap();
        assert!(!violations.is_empty());
        assert!(violations.iter().any(|v| v.identity == 4 || v.identity == 6));
        assert!(violations[0].to_string().contains("identity ("));
    }

    #[test]
    fn parity_choice_does_not_change_values() {
        for ty in LieType::all_up_to_rank(8) {
            let a = ctilde_table(&build_cartan_with_parity(ty, ParityChoice::Standard), 20).unwrap();
            let b = ctilde_table(&build_cartan_with_parity(ty, ParityChoice::Flipped), 20).unwrap();
            for i in 1..=ty.rank() {
                for j in 1..=ty.rank() {
                    assert_eq!(a.series(i, j), b.series(i, j));
                }
            }
        }
    }

    #[test]
    fn truncated_inverse_is_close_in_exact_arithmetic() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::{One, Signed, Zero};

        for ty in [
            LieType::new(Family::A, 3).unwrap(),
            LieType::new(Family::D, 5).unwrap(),
            LieType::new(Family::E, 6).unwrap(),
        ] {
            let c = build_cartan(ty);
            let big_l = 4 * c.coxeter_number();
            let t = ctilde_table(&c, big_l).unwrap();
            let z = BigRational::new(BigInt::from(1), BigInt::from(5));
            let n = c.rank();
            let partial: Vec<Vec<BigRational>> = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|j| {
                            let mut acc = BigRational::zero();
                            let mut zp = BigRational::one();
                            for l in 1..=big_l {
                                zp = &zp * &z;
                                acc += &zp * BigRational::from_integer(t.get(i, j, l as i64).into());
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            let max_c = (1..=n)
                .flat_map(|i| (1..=n).flat_map(move |j| (1..=big_l as i64).map(move |l| (i, j, l))))
                .map(|(i, j, l)| t.get(i, j, l).abs())
                .max()
                .unwrap();
            // tail bound: (max|c~| + 1) * sum_{l >= L} (2z)^l
            let two_z = &z * BigRational::from_integer(2.into());
            let mut geo = BigRational::one();
            for _ in 0..big_l {
                geo = &geo * &two_z;
            }
            let bound = geo / (BigRational::one() - &two_z) * BigRational::from_integer((max_c + 1).into());
            let diag = &z + BigRational::one() / &z;
            for i in 1..=n {
                for j in 1..=n {
                    let mut entry = &diag * &partial[i - 1][j - 1];
                    for &k in c.neighbors(i) {
                        entry -= &partial[k - 1][j - 1];
                    }
                    if i == j {
                        entry -= BigRational::one();
                    }
                    assert!(entry.abs() <= bound, "{ty} ({i},{j})");
                }
            }
        }
    }
}
