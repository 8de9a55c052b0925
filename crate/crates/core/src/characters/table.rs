use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{round_integral, Config};
use crate::error::{Error, Result};
use crate::permgroup::{ConjugacyClassSet, GeneratedPermGroup, Permutation};

/// Complex irreducible characters of a finite group.
///
/// Rows are irreducibles, columns are conjugacy classes. Row 0 is the trivial
/// character and column 0 is the identity class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group_order: usize,
    classes: ConjugacyClassSet,
    /// `power_classes[c][j]` is the class of `rep_c^j`, for `j < ord(rep_c)`.
    power_classes: Vec<Vec<usize>>,
    values: Vec<Vec<Complex64>>,
    dims: Vec<usize>,
    labels: Vec<String>,
    integrality_tol: f64,
}

impl CharacterTable {
    /// Assembles and validates a table from explicit rows. Rows are reordered
    /// so that the trivial character comes first.
    pub fn from_rows(
        group: &GeneratedPermGroup,
        classes: ConjugacyClassSet,
        rows: Vec<Vec<Complex64>>,
        labels: Vec<String>,
        cfg: &Config,
    ) -> Result<Self> {
        let k = classes.len();
        if rows.len() != k || labels.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::invariant(format!("character table must be square with {k} rows and labels")));
        }
        let power_classes = (0..k)
            .map(|c| {
                let ord = classes.element_order(c) as i64;
                (0..ord).map(|j| classes.power_class(group, c, j)).collect()
            })
            .collect();
        let mut dims = Vec::with_capacity(k);
        for (row, label) in rows.iter().zip(&labels) {
            let d = round_integral(row[0].re, cfg.integrality_tol)
                .filter(|&d| d > 0 && row[0].im.abs() <= cfg.integrality_tol)
                .ok_or_else(|| Error::invariant(format!("character {label} has non-integral degree {}", row[0])))?;
            dims.push(d as usize);
        }
        let trivial = rows
            .iter()
            .position(|r| r.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-6))
            .ok_or_else(|| Error::invariant("no trivial character among the rows"))?;
        let mut order: Vec<usize> = (0..k).collect();
        order.swap(0, trivial);
        let table = CharacterTable {
            group_order: group.order(),
            classes,
            power_classes,
            values: order.iter().map(|&i| rows[i].clone()).collect(),
            dims: order.iter().map(|&i| dims[i]).collect(),
            labels: order.iter().map(|&i| labels[i].clone()).collect(),
            integrality_tol: cfg.integrality_tol,
        };
        table.validate(cfg.orthogonality_tol)?;
        Ok(table)
    }

    /// Generic table by the Burnside class-matrix method.
    pub fn compute(group: &GeneratedPermGroup, cfg: &Config) -> Result<Self> {
        let classes = group.conjugacy_classes();
        let k = classes.len();
        if k > cfg.class_cap {
            return Err(Error::input(format!("{k} conjugacy classes exceed the cap of {}", cfg.class_cap)));
        }
        let constants = class_constants(group, &classes);
        let sizes: Vec<f64> = classes.sizes().iter().map(|&s| s as f64).collect();
        let mut last_err = None;
        for attempt in 0..cfg.table_attempts.max(1) {
            let seed = cfg.table_seed.wrapping_add(attempt as u64);
            match burnside_rows(&constants, &sizes, group.order(), seed, cfg) {
                Ok(rows) => {
                    let rows = sort_rows(rows);
                    let labels = (0..k).map(|i| format!("chi{i}")).collect();
                    match Self::from_rows(group, classes.clone(), rows, labels, cfg) {
                        Ok(t) => return Ok(t),
                        Err(e) => last_err = Some(e),
                    }
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(Error::Numerical(format!(
            "character table failed validation after {} attempts: {}",
            cfg.table_attempts,
            last_err.map(|e| e.to_string()).unwrap_or_default()
        )))
    }

    fn validate(&self, tol: f64) -> Result<()> {
        let k = self.len();
        let n = self.group_order as f64;
        let sizes = self.classes.sizes();
        let mut worst = 0.0f64;
        for a in 0..k {
            for b in a..k {
                let s: Complex64 =
                    (0..k).map(|c| self.values[a][c] * self.values[b][c].conj() * sizes[c] as f64).sum::<Complex64>()
                        / n;
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        for c in 0..k {
            for d in c..k {
                let s: Complex64 = (0..k).map(|a| self.values[a][c] * self.values[a][d].conj()).sum::<Complex64>()
                    * (sizes[c] as f64 / n);
                let target = if c == d { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        if worst > tol {
            return Err(Error::Numerical(format!("orthogonality residual {worst:.3e} exceeds {tol:.0e}")));
        }
        let sum_sq: usize = self.dims.iter().map(|d| d * d).sum();
        if sum_sq != self.group_order {
            return Err(Error::invariant(format!(
                "sum of squared degrees {sum_sq} differs from group order {}",
                self.group_order
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn classes(&self) -> &ConjugacyClassSet {
        &self.classes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, row: usize) -> usize {
        self.dims[row]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, row: usize) -> &str {
        &self.labels[row]
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.values[row]
    }

    pub fn value(&self, row: usize, class: usize) -> Complex64 {
        self.values[row][class]
    }

    pub fn class_sizes(&self) -> &[usize] {
        self.classes.sizes()
    }

    /// Class of `rep_class^k`.
    pub fn power_class(&self, class: usize, k: i64) -> usize {
        let pc = &self.power_classes[class];
        pc[k.rem_euclid(pc.len() as i64) as usize]
    }

    pub fn class_of(&self, group: &GeneratedPermGroup, x: &Permutation) -> Result<usize> {
        self.classes.class_of(group, x).ok_or_else(|| Error::input("element is not in the table's group"))
    }

    /// `dim Fix(x) = (1/ord x) Σ_j χ(x^j)` for `x` in the given class.
    pub fn dim_fix_class(&self, row: usize, class: usize) -> Result<usize> {
        let pc = &self.power_classes[class];
        let s: Complex64 = pc.iter().map(|&c| self.values[row][c]).sum();
        let avg = s / pc.len() as f64;
        round_integral(avg.re, self.integrality_tol)
            .filter(|&v| v >= 0 && avg.im.abs() <= self.integrality_tol)
            .map(|v| v as usize)
            .ok_or_else(|| {
                Error::invariant(format!(
                    "fixed-space dimension {avg} of {} on class {class} is not a nonnegative integer",
                    self.labels[row]
                ))
            })
    }

    pub fn dim_fix(&self, group: &GeneratedPermGroup, row: usize, x: &Permutation) -> Result<usize> {
        let class = self.class_of(group, x)?;
        self.dim_fix_class(row, class)
    }

    /// Frobenius–Schur indicator `(1/|G|) Σ_g χ(g²)`.
    pub fn fs_indicator(&self, row: usize) -> Result<i32> {
        let sizes = self.classes.sizes();
        let s: Complex64 =
            (0..self.len()).map(|c| self.values[row][self.power_class(c, 2)] * sizes[c] as f64).sum::<Complex64>()
                / self.group_order as f64;
        round_integral(s.re, self.integrality_tol)
            .filter(|v| (-1..=1).contains(v) && s.im.abs() <= self.integrality_tol)
            .map(|v| v as i32)
            .ok_or_else(|| {
                Error::invariant(format!("Frobenius-Schur sum {s} of {} is not in {{-1, 0, 1}}", self.labels[row]))
            })
    }

    /// Row index whose values are the complex conjugates of `row`.
    pub fn conjugate_row(&self, row: usize) -> Option<usize> {
        (0..self.len())
            .find(|&b| self.values[row].iter().zip(&self.values[b]).all(|(x, y)| (x.conj() - y).norm() < 1e-6))
    }

    /// Galois orbits over the rationals: `χ ~ χ∘(x ↦ x^k)` for `k` prime to
    /// the group exponent. Each orbit is sorted; orbits are ordered by first member.
    pub fn rational_classes(&self) -> Vec<Vec<usize>> {
        use num_integer::Integer;
        let k = self.len();
        let exponent = (0..k).fold(1u64, |acc, c| acc.lcm(&self.classes.element_order(c)));
        let mut orbit_of = vec![usize::MAX; k];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for a in 0..k {
            if orbit_of[a] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![a];
            orbit_of[a] = id;
            for e in 2..exponent.max(2) {
                if e.gcd(&exponent) != 1 {
                    continue;
                }
                let image: Vec<Complex64> = (0..k).map(|c| self.values[a][self.power_class(c, e as i64)]).collect();
                if let Some(b) = (0..k).find(|&b| image.iter().zip(&self.values[b]).all(|(x, y)| (x - y).norm() < 1e-6))
                {
                    if orbit_of[b] == usize::MAX {
                        orbit_of[b] = id;
                        members.push(b);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits
    }

    /// Row-major values as `[re, im]` pairs, for export.
    pub fn export(&self) -> TableExport {
        TableExport {
            group_order: self.group_order,
            classes: (0..self.len())
                .map(|c| ClassExport {
                    representative: self.classes.representative(c).clone(),
                    size: self.classes.sizes()[c],
                    order: self.classes.element_order(c),
                })
                .collect(),
            rows: (0..self.len())
                .map(|r| RowExport {
                    label: self.labels[r].clone(),
                    dim: self.dims[r],
                    values: self.values[r]
                        .iter()
                        .map(|v| [crate::report::sig12(v.re), crate::report::sig12(v.im)])
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableExport {
    pub group_order: usize,
    pub classes: Vec<ClassExport>,
    pub rows: Vec<RowExport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassExport {
    pub representative: Permutation,
    pub size: usize,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowExport {
    pub label: String,
    pub dim: usize,
    pub values: Vec<[f64; 2]>,
}

/// `constants[i][j][l] = #{(x, y) ∈ C_i × C_j : xy = z_l}` for a fixed `z_l ∈ C_l`.
fn class_constants(group: &GeneratedPermGroup, classes: &ConjugacyClassSet) -> Vec<Vec<Vec<f64>>> {
    let k = classes.len();
    let mut out = vec![vec![vec![0.0; k]; k]; k];
    let inverses: Vec<Permutation> = group.elements().iter().map(Permutation::inverse).collect();
    for l in 0..k {
        let z = classes.representative(l);
        for (a, xi) in inverses.iter().enumerate() {
            let y = xi * z;
            let b = group.index_of(&y).expect("closed");
            out[classes.class_of_index(a)][classes.class_of_index(b)][l] += 1.0;
        }
    }
    out
}

fn burnside_rows(
    constants: &[Vec<Vec<f64>>],
    sizes: &[f64],
    group_order: usize,
    seed: u64,
    cfg: &Config,
) -> Result<Vec<Vec<Complex64>>> {
    let k = sizes.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sqrt_sizes: Vec<f64> = sizes.iter().map(|s| s.sqrt()).collect();
    // M_i has entries (j, l) = c_ij^l. Conjugating by D^{1/2} (D = class sizes)
    // makes every M_i normal, so a random combination of their Hermitian and
    // anti-Hermitian parts is Hermitian with the characters as eigenvectors.
    let mut h = DMatrix::<Complex64>::zeros(k, k);
    for i in 0..k {
        let a: f64 = rng.gen_range(-1.0..1.0) / sizes[i];
        let b: f64 = rng.gen_range(-1.0..1.0) / sizes[i];
        for j in 0..k {
            for l in 0..k {
                let m_jl = constants[i][j][l] * sqrt_sizes[l] / sqrt_sizes[j];
                let m_lj = constants[i][l][j] * sqrt_sizes[j] / sqrt_sizes[l];
                h[(j, l)] += Complex64::new(a * (m_jl + m_lj) / 2.0, -b * (m_jl - m_lj) / 2.0);
            }
        }
    }
    let eig = h.symmetric_eigen();
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let spread = ev.last().unwrap_or(&0.0) - ev.first().unwrap_or(&0.0);
    let min_gap = ev.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if k > 1 && min_gap <= 1e-7 * spread.max(1.0) {
        return Err(Error::Numerical(format!("eigenvalue gap {min_gap:.2e} too small")));
    }
    let mut rows = Vec::with_capacity(k);
    for col in 0..k {
        let v = eig.eigenvectors.column(col);
        let omega: Vec<Complex64> = (0..k).map(|l| v[l] * sqrt_sizes[l]).collect();
        if omega[0].norm() < 1e-12 {
            return Err(Error::Numerical("eigenvector vanishes at the identity".into()));
        }
        let omega: Vec<Complex64> = omega.iter().map(|w| w / omega[0]).collect();
        let norm: f64 = (0..k).map(|l| omega[l].norm_sqr() / sizes[l]).sum();
        let dim_f = (group_order as f64 / norm).sqrt();
        let dim = round_integral(dim_f, cfg.integrality_tol)
            .ok_or_else(|| Error::Numerical(format!("character degree {dim_f} is not an integer")))?
            as f64;
        rows.push((0..k).map(|l| omega[l] * dim / sizes[l]).collect());
    }
    Ok(rows)
}

/// Deterministic ordering: by degree, then by rounded values.
fn sort_rows(mut rows: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    let key = |r: &Vec<Complex64>| -> Vec<i64> {
        r.iter().flat_map(|v| [(v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64]).collect()
    };
    rows.sort_by(|a, b| (a[0].re.round() as i64).cmp(&(b[0].re.round() as i64)).then_with(|| key(b).cmp(&key(a))));
    rows
}
