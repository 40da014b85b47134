//! Counting, probability and measure with infinite and infinitesimal values.

use serde::Deserialize;

use crate::division::divide_exact;
use crate::error::{Error, Result};
use crate::io::parse_digit;
use crate::number::{GrossNumber, Rational};

/// Points of `[0,1)` when each unit is split into `①^resolution` parts.
pub fn points_in_unit_interval(resolution: u32) -> Result<GrossNumber> {
    check_resolution(resolution)?;
    Ok(GrossNumber::grossone_pow(resolution.into()))
}

/// Points on the whole line: `①` unit intervals on each side of the origin.
pub fn points_on_line(resolution: u32) -> Result<GrossNumber> {
    check_resolution(resolution)?;
    Ok(GrossNumber::monomial(
        Rational::from_integer(2.into()),
        GrossNumber::from_integer(i64::from(resolution) + 1),
    ))
}

fn check_resolution(resolution: u32) -> Result<()> {
    if resolution == 0 {
        return Err(Error::InvalidArgument(
            "resolution must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Probability of an event with `favorable` outcomes out of `total`
/// equiprobable ones.
pub fn event_probability(favorable: &GrossNumber, total: &GrossNumber) -> Result<GrossNumber> {
    if !total.is_positive() {
        return Err(Error::InvalidProbability("total must be positive".into()));
    }
    if favorable.is_negative() || favorable > total {
        return Err(Error::InvalidProbability(
            "favorable count must lie between 0 and total".into(),
        ));
    }
    divide_exact(favorable, total)?.ok_or(Error::InexactProbability)
}

/// A piece of a figure: `extent` along its full dimensions, missing `codim`
/// dimensions, each of which is `width_points` points wide at
/// `①^resolution` points per unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurePiece {
    pub extent: Rational,
    pub codim: u32,
    pub width_points: u64,
    pub resolution: u32,
}

impl MeasurePiece {
    pub fn new(extent: Rational, codim: u32, width_points: u64, resolution: u32) -> Result<Self> {
        if width_points == 0 {
            return Err(Error::InvalidArgument(
                "width_points must be at least 1".into(),
            ));
        }
        check_resolution(resolution)?;
        Ok(MeasurePiece {
            extent,
            codim,
            width_points,
            resolution,
        })
    }

    /// A full-dimensional piece.
    pub fn solid(extent: Rational) -> Self {
        MeasurePiece {
            extent,
            codim: 0,
            width_points: 1,
            resolution: 1,
        }
    }

    /// `extent · (width_points · ①^-resolution)^codim`
    pub fn measure(&self) -> GrossNumber {
        let width = Rational::from_integer(self.width_points.into());
        let digit = &self.extent * num_traits::Pow::pow(width, self.codim);
        let power = -(i64::from(self.resolution) * i64::from(self.codim));
        GrossNumber::monomial(digit, GrossNumber::from_integer(power))
    }
}

pub fn piece_measure(p: &MeasurePiece) -> GrossNumber {
    p.measure()
}

pub fn total_measure(pieces: &[MeasurePiece]) -> GrossNumber {
    pieces.iter().map(MeasurePiece::measure).sum()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceJson {
    extent: String,
    codim: u32,
    #[serde(default = "one_u64")]
    width_points: u64,
    #[serde(default = "one_u32")]
    resolution: u32,
}

fn one_u64() -> u64 {
    1
}

fn one_u32() -> u32 {
    1
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PiecesJson {
    Many(Vec<PieceJson>),
    One(PieceJson),
}

/// Reads pieces given as `{"extent": "1", "codim": 1, "width_points": 3, "resolution": 1}`
/// objects, either a single one or an array of them.
pub fn pieces_from_json(text: &str) -> Result<Vec<MeasurePiece>> {
    let raw: PiecesJson = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let raw = match raw {
        PiecesJson::Many(v) => v,
        PiecesJson::One(p) => vec![p],
    };
    raw.into_iter()
        .map(|p| {
            let extent = parse_digit(&p.extent)
                .map_err(|e| Error::Schema(format!("extent {:?}: {e}", p.extent)))?;
            MeasurePiece::new(extent, p.codim, p.width_points, p.resolution)
                .map_err(|e| Error::Schema(e.to_string()))
        })
        .collect()
}
