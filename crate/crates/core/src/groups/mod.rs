//! The reflection group Γ_{n,m} and the Fuchsian side-pairing group F_{n,m} of the
//! regular polygon, as finitely generated matrix groups with labelled generators.

mod census;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use core::fmt;
use core::str::FromStr;

pub use census::{BallCensus, CensusLimits, DEFAULT_RADIUS_CAP, ORBIT_GRID};

use crate::hypgeom::{self, side_reflections, DiskPoint, GeomError, Isometry, PolygonSpec};

/// Two orbit points closer than this (Euclidean, disk chart) are treated as one point
/// by the stabilizer check.
const STABILIZER_POINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Family {
    /// Generated by the reflections `r_i` in the polygon sides.
    Reflection,
    /// Generated by the translations `t_i` pairing opposite sides.
    Fuchsian,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::Reflection => 'r',
            Family::Fuchsian => 't',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Reflection => "reflection",
            Family::Fuchsian => "fuchsian",
        })
    }
}

impl FromStr for Family {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reflection" | "coxeter" => Ok(Family::Reflection),
            "fuchsian" => Ok(Family::Fuchsian),
            other => Err(GroupError::UnknownFamily(other.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("unknown group family {0:?} (expected reflection or fuchsian)")]
    UnknownFamily(String),
    #[error("reflection group needs even m >= 4, got m = {m}")]
    ReflectionOrder { m: u32 },
    #[error("Fuchsian side pairing needs even n >= 4, got n = {n}")]
    FuchsianSides { n: u32 },
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("generator index {index} out of range for {rank} generators")]
    LetterOutOfRange { index: usize, rank: usize },
    #[error("base point is fixed by the non-trivial element {word}")]
    NontrivialStabilizer { word: String },
    #[error("census radius {r_max} exceeds the cap {cap}")]
    RadiusCap { r_max: f64, cap: f64 },
    #[error("census step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("census exceeded {limit} elements")]
    ElementBudget { limit: usize },
    #[error("orbit points of distinct elements share a quantization cell near {x}, {y} (matrix distance {matrix_distance:e})")]
    Precision { x: f64, y: f64, matrix_distance: f64 },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Generator {
    pub label: String,
    pub iso: Isometry,
    /// Index of the inverse generator.
    pub inverse: usize,
}

/// A word in the generators, stored as 0-based generator indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Word {
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word repeated `k` times.
    pub fn power(&self, k: usize) -> Word {
        Word::new(self.letters.repeat(k))
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word::new(letters)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupModel {
    pub family: Family,
    pub spec: PolygonSpec,
    pub generators: Vec<Generator>,
    pub base_point: DiskPoint,
    /// Orientation-preserving isometry taking the disk origin to `base_point`.
    frame: Isometry,
    frame_inverse: Isometry,
}

impl GroupModel {
    /// Builds Γ_{n,m} or F_{n,m} with its default base point.
    ///
    /// The reflection group uses the polygon centre. The Fuchsian group uses the point
    /// at distance `h/2` on the axis of `t_1`: for several `(n, m)` the group contains
    /// rotations about the centre, whereas a point that is not a tile centre, vertex or
    /// edge midpoint is fixed by no orientation-preserving symmetry of the tiling.
    pub fn build(family: Family, n: u32, m: u32) -> Result<Self, GroupError> {
        let spec = match family {
            Family::Reflection if m < 4 || !m.is_multiple_of(2) => {
                return Err(GroupError::ReflectionOrder { m })
            }
            Family::Fuchsian if n < 4 || !n.is_multiple_of(2) => return Err(GroupError::FuchsianSides { n }),
            _ => hypgeom::polygon_spec(n, m)?,
        };
        let generators = match family {
            Family::Reflection => side_reflections(&spec)
                .into_iter()
                .enumerate()
                .map(|(i, iso)| Generator {
                    label: format!("r{}", i + 1),
                    iso,
                    inverse: i,
                })
                .collect(),
            Family::Fuchsian => {
                let half = spec.n as usize / 2;
                side_reflections(&spec)
                    .into_iter()
                    .zip(spec.side_angles.iter())
                    .enumerate()
                    .map(|(i, (side, &angle))| Generator {
                        label: format!("t{}", i + 1),
                        iso: side.compose(&Isometry::reflection_in_diameter(angle + FRAC_PI_2)),
                        inverse: (i + half) % spec.n as usize,
                    })
                    .collect()
            }
        };
        let offset = match family {
            Family::Reflection => 0.0,
            Family::Fuchsian => 0.5 * spec.inradius,
        };
        let base = DiskPoint::at_distance(offset, 0.0);
        let model = GroupModel {
            family,
            spec,
            generators,
            base_point: base,
            frame: Isometry::IDENTITY,
            frame_inverse: Isometry::IDENTITY,
        };
        model.with_base_offset(offset)
    }

    /// Moves the base point to distance `offset` from the centre along the axis of
    /// generator 1 (direction 0) and re-runs the stabilizer check.
    pub fn with_base_offset(mut self, offset: f64) -> Result<Self, GroupError> {
        self.frame = Isometry::translation(offset);
        self.frame_inverse = self.frame.inverse();
        self.base_point = self.frame.orbit_of_origin();
        self.check_stabilizer()?;
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.generators[index].label
    }

    /// Resolves `r3`, `t3` or a bare `3` to the generator index 2.
    pub fn resolve_label(&self, label: &str) -> Result<usize, GroupError> {
        let trimmed = label.trim();
        let digits = trimmed
            .strip_prefix(self.family.letter())
            .or_else(|| trimmed.strip_prefix(self.family.letter().to_ascii_uppercase()))
            .unwrap_or(trimmed);
        match digits.parse::<usize>() {
            Ok(k) if k >= 1 && k <= self.rank() => Ok(k - 1),
            _ => Err(GroupError::UnknownLabel(label.into())),
        }
    }

    /// Parses a comma- or whitespace-separated list of labels.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| self.resolve_label(tok))
            .collect::<Result<Vec<_>, _>>()
            .map(Word::new)
    }

    pub fn format_word(&self, word: &Word) -> String {
        let labels: Vec<&str> = word
            .letters
            .iter()
            .map(|&i| self.generators.get(i).map_or("?", |g| g.label.as_str()))
            .collect();
        labels.join(",")
    }

    pub fn check_word(&self, word: &Word) -> Result<(), GroupError> {
        match word.letters.iter().find(|&&i| i >= self.rank()) {
            Some(&index) => Err(GroupError::LetterOutOfRange {
                index,
                rank: self.rank(),
            }),
            None => Ok(()),
        }
    }

    /// Left-to-right product `s_1 s_2 ⋯ s_k`; the empty word is the identity.
    pub fn evaluate(&self, word: &Word) -> Result<Isometry, GroupError> {
        self.check_word(word)?;
        Ok(word
            .letters
            .iter()
            .fold(Isometry::IDENTITY, |acc, &i| acc.compose(&self.generators[i].iso)))
    }

    /// `d(x_0, g.x_0)` for the element spelled by `word`.
    pub fn geo_distance(&self, word: &Word) -> Result<f64, GroupError> {
        Ok(self.displacement(&self.evaluate(word)?))
    }

    /// `d(x_0, g.x_0)`, computed in the base-point frame so that it stays accurate far
    /// from the origin.
    pub fn displacement(&self, g: &Isometry) -> f64 {
        self.to_frame(g).displacement_from_origin()
    }

    /// `g.x_0`.
    pub fn orbit_point(&self, g: &Isometry) -> DiskPoint {
        g.compose(&self.frame).orbit_of_origin()
    }

    /// Conjugates `g` into the frame where the base point sits at the origin.
    pub fn to_frame(&self, g: &Isometry) -> Isometry {
        self.frame_inverse.compose(g).compose(&self.frame)
    }

    /// Conjugates `g` back out of the base-point frame.
    pub fn from_frame(&self, g: &Isometry) -> Isometry {
        self.frame.compose(g).compose(&self.frame_inverse)
    }

    /// Generators conjugated into the base-point frame.
    pub fn frame_generators(&self) -> Vec<Isometry> {
        self.generators.iter().map(|g| self.to_frame(&g.iso)).collect()
    }

    /// Largest single-step displacement `max_i d(x_0, s_i.x_0)`.
    pub fn max_step_displacement(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| self.displacement(&g.iso))
            .fold(0.0, f64::max)
    }

    /// The canonical hyperbolic word for the criterion: `r_1 r_{n/2+1}` for even `n`,
    /// `r_1 r_{(n+1)/2}` for odd `n`, and `t_1` for the Fuchsian family.
    pub fn canonical_word(&self) -> Word {
        let n = self.spec.n as usize;
        match self.family {
            Family::Fuchsian => Word::new(alloc::vec![0]),
            Family::Reflection if n.is_multiple_of(2) => Word::new(alloc::vec![0, n / 2]),
            Family::Reflection => Word::new(alloc::vec![0, (n - 1) / 2]),
        }
    }

    pub fn ball_census(&self, r_max: f64, step: f64) -> Result<BallCensus, GroupError> {
        census::ball_census(self, r_max, step, &CensusLimits::default())
    }

    pub fn ball_census_with(
        &self,
        r_max: f64,
        step: f64,
        limits: &CensusLimits,
    ) -> Result<BallCensus, GroupError> {
        census::ball_census(self, r_max, step, limits)
    }

    /// Every reduced word of length at most 4 factors as `v⁻¹u` with `|u|, |v| <= 2`,
    /// so a non-trivial stabilizer element of that length shows up as two short words
    /// with the same orbit point and different matrices.
    fn check_stabilizer(&self) -> Result<(), GroupError> {
        let k = self.rank();
        let mut short: Vec<(Vec<usize>, Isometry)> = Vec::with_capacity(1 + k * k);
        short.push((Vec::new(), Isometry::IDENTITY));
        for i in 0..k {
            short.push((alloc::vec![i], self.generators[i].iso));
        }
        for i in 0..k {
            for j in 0..k {
                if j != self.generators[i].inverse {
                    let g = self.generators[i].iso.compose(&self.generators[j].iso);
                    short.push((alloc::vec![i, j], g));
                }
            }
        }
        let mut points: Vec<(DiskPoint, usize)> = short
            .iter()
            .enumerate()
            .map(|(idx, (_, g))| (self.orbit_point(g), idx))
            .collect();
        points.sort_by(|a, b| a.0.x.total_cmp(&b.0.x));
        for (lo, &(p, i)) in points.iter().enumerate() {
            for &(q, j) in points[lo + 1..].iter() {
                if q.x - p.x > STABILIZER_POINT_TOL {
                    break;
                }
                if p.euclid_dist(&q) <= STABILIZER_POINT_TOL
                    && short[i].1.matrix_distance(&short[j].1) > 1e-6
                {
                    // the witness is v⁻¹u
                    let (u, v) = (&short[i].0, &short[j].0);
                    let mut letters: Vec<usize> =
                        v.iter().rev().map(|&s| self.generators[s].inverse).collect();
                    letters.extend_from_slice(u);
                    return Err(GroupError::NontrivialStabilizer {
                        word: self.format_word(&Word::new(letters)),
                    });
                }
            }
        }
        Ok(())
    }
}
