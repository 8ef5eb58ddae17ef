use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{GroupError, GroupModel};
use crate::hypgeom::{DiskPoint, Isometry};

/// Default largest census radius; memory grows like `e^R`.
pub const DEFAULT_RADIUS_CAP: f64 = 12.0;

/// Quantization grid for orbit points in the disk chart.
pub const ORBIT_GRID: f64 = 1e-7;

/// Relative matrix distance above which two elements are distinct.
const SAME_ELEMENT_TOL: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub struct CensusLimits {
    pub radius_cap: f64,
    pub max_elements: usize,
}

impl Default for CensusLimits {
    fn default() -> Self {
        CensusLimits {
            radius_cap: DEFAULT_RADIUS_CAP,
            max_elements: 40_000_000,
        }
    }
}

/// Counts of group elements `g` with `d(x_0, g.x_0) <= R` on a grid of radii.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BallCensus {
    pub radius_grid: Vec<f64>,
    pub counts: Vec<u64>,
    /// Least-squares slope of `log count` against `R` over the upper half of the grid.
    pub slope_estimate: f64,
}

impl BallCensus {
    /// The count at the largest grid radius not exceeding `r`.
    pub fn count_at(&self, r: f64) -> Option<u64> {
        self.radius_grid
            .iter()
            .zip(&self.counts)
            .take_while(|(&g, _)| g <= r)
            .last()
            .map(|(_, &c)| c)
    }
}

struct Element {
    iso: Isometry,
    point: DiskPoint,
}

type Cell = (i64, i64);

fn cell_of(p: &DiskPoint) -> Cell {
    (
        libm::floor(p.x / ORBIT_GRID) as i64,
        libm::floor(p.y / ORBIT_GRID) as i64,
    )
}

fn relative_matrix_distance(a: &Isometry, b: &Isometry) -> f64 {
    let scale = libm::sqrt(a.frobenius_sq().max(b.frobenius_sq())).max(1.0);
    a.matrix_distance(b) / scale
}

/// Breadth-first closure of the identity under right multiplication by generators.
///
/// Elements are identified by their quantized orbit points; a lookup also scans the
/// eight neighbouring cells so that rounding across a cell edge cannot split one
/// element in two. Expansion is pruned beyond `r_max + margin`, where the margin is
/// the circumradius plus the offset of the base point from the centre: every tile
/// crossed by the geodesic from `x_0` to `g.x_0` carries an orbit point within that
/// margin of the segment, and consecutive crossed tiles differ by one generator.
pub(super) fn ball_census(
    model: &GroupModel,
    r_max: f64,
    step: f64,
    limits: &CensusLimits,
) -> Result<BallCensus, GroupError> {
    if !(step.is_finite() && step > 0.0) {
        return Err(GroupError::BadStep(step));
    }
    if !(r_max.is_finite() && r_max >= 0.0) || r_max > limits.radius_cap {
        return Err(GroupError::RadiusCap {
            r_max,
            cap: limits.radius_cap,
        });
    }
    let offset = crate::hypgeom::dist(&DiskPoint::ORIGIN, &model.base_point)?;
    let prune = r_max + model.spec.circumradius + offset + 1e-6;

    let mut elements: Vec<Element> = Vec::new();
    let mut distances: Vec<f64> = Vec::new();
    let mut index: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();

    let root = Element {
        iso: Isometry::IDENTITY,
        point: model.base_point,
    };
    index.entry(cell_of(&root.point)).or_default().push(0);
    elements.push(root);
    distances.push(0.0);

    let mut frontier: Vec<usize> = alloc::vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &parent in &frontier {
            for gen in &model.generators {
                let iso = elements[parent].iso.compose(&gen.iso);
                let d = model.displacement(&iso);
                if d > prune {
                    continue;
                }
                let point = model.orbit_point(&iso);
                let (cx, cy) = cell_of(&point);
                let mut seen = false;
                'scan: for dx in -1..=1 {
                    for dy in -1..=1 {
                        let Some(bucket) = index.get(&(cx + dx, cy + dy)) else {
                            continue;
                        };
                        for &k in bucket {
                            if elements[k].point.euclid_dist(&point) > ORBIT_GRID {
                                continue;
                            }
                            let md = relative_matrix_distance(&elements[k].iso, &iso);
                            if md > SAME_ELEMENT_TOL {
                                return Err(GroupError::Precision {
                                    x: point.x,
                                    y: point.y,
                                    matrix_distance: md,
                                });
                            }
                            seen = true;
                            break 'scan;
                        }
                    }
                }
                if seen {
                    continue;
                }
                if elements.len() >= limits.max_elements {
                    return Err(GroupError::ElementBudget {
                        limit: limits.max_elements,
                    });
                }
                let id = elements.len();
                index.entry((cx, cy)).or_default().push(id);
                elements.push(Element { iso, point });
                distances.push(d);
                next.push(id);
            }
        }
        frontier = next;
    }

    distances.sort_by(f64::total_cmp);
    let radius_grid = radius_grid(r_max, step);
    let counts: Vec<u64> = radius_grid
        .iter()
        .map(|&r| distances.partition_point(|&d| d <= r + 1e-9) as u64)
        .collect();
    let slope_estimate = upper_half_slope(&radius_grid, &counts);
    Ok(BallCensus {
        radius_grid,
        counts,
        slope_estimate,
    })
}

fn radius_grid(r_max: f64, step: f64) -> Vec<f64> {
    let steps = libm::floor(r_max / step + 1e-9) as usize;
    let mut grid: Vec<f64> = (0..=steps).map(|j| j as f64 * step).collect();
    if r_max - grid[grid.len() - 1] > 1e-12 {
        grid.push(r_max);
    }
    grid
}

fn upper_half_slope(radii: &[f64], counts: &[u64]) -> f64 {
    let start = radii.len() / 2;
    let xs = &radii[start..];
    let ys: Vec<f64> = counts[start..].iter().map(|&c| libm::log(c as f64)).collect();
    least_squares_slope(xs, &ys)
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}
