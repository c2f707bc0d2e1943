//! Exact finite-dimensional samplers and their batch container.

pub mod bessel;
mod bivariate;
mod field;
mod gamma;
pub mod rng;

pub use bessel::{bessel_i, log_bessel_i, BesselEval};
pub use bivariate::{bivariate_density, log_bivariate_density, sample_bivariate};
pub use field::{factor_psd, sample_halfint_field, sample_path_grid};
pub use gamma::sample_gamma;
pub use rng::{replicate_rng, SamplerId};

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A seeded matrix of replicate draws at fixed evaluation points.
///
/// Row `r` holds replicate `r` over all points; batches are reproducible
/// bit-exactly from `(seed, sampler_id, shape)` and immutable once built.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleBatch {
    pub points: Vec<f64>,
    /// Row-major `n_rep × n_points`.
    pub draws: Vec<f64>,
    pub n_rep: usize,
    pub seed: u64,
    pub sampler_id: SamplerId,
}

impl SampleBatch {
    pub(crate) fn from_rows(
        points: Vec<f64>,
        rows: Vec<Vec<f64>>,
        seed: u64,
        sampler_id: SamplerId,
    ) -> Self {
        let n_rep = rows.len();
        let n_points = points.len();
        let mut draws = Vec::with_capacity(n_rep * n_points);
        for row in rows {
            debug_assert_eq!(row.len(), n_points);
            draws.extend(row);
        }
        debug_assert!(draws.iter().all(|&v| v >= 0.0));
        SampleBatch { points, draws, n_rep, seed, sampler_id }
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn row(&self, r: usize) -> &[f64] {
        let n = self.n_points();
        &self.draws[r * n..(r + 1) * n]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        let n = self.n_points();
        self.draws.iter().skip(j).step_by(n).copied()
    }

    /// CSV: one row per replicate, one column per point.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        let header: Vec<String> = self.points.iter().map(|p| format!("x_{p}")).collect();
        writeln!(w, "{}", header.join(","))?;
        for r in 0..self.n_rep {
            let row: Vec<String> = self.row(r).iter().map(|v| format!("{v}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// Compact binary layout: header `{seed: u64, sampler_id: u32,
    /// n_points: u32, n_rep: u32}` then row-major little-endian f64.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(&self.seed.to_le_bytes())?;
        w.write_all(&self.sampler_id.code().to_le_bytes())?;
        w.write_all(&(self.n_points() as u32).to_le_bytes())?;
        w.write_all(&(self.n_rep as u32).to_le_bytes())?;
        for p in &self.points {
            w.write_all(&p.to_le_bytes())?;
        }
        for v in &self.draws {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let mut u64b = [0u8; 8];
        let mut u32b = [0u8; 4];
        r.read_exact(&mut u64b)?;
        let seed = u64::from_le_bytes(u64b);
        r.read_exact(&mut u32b)?;
        let sampler_id = SamplerId::from_code(u32::from_le_bytes(u32b))
            .ok_or_else(|| Error::Parameter("unknown sampler id in batch header".into()))?;
        r.read_exact(&mut u32b)?;
        let n_points = u32::from_le_bytes(u32b) as usize;
        r.read_exact(&mut u32b)?;
        let n_rep = u32::from_le_bytes(u32b) as usize;
        let read_f64 = |r: &mut R| -> Result<f64> {
            let mut b = [0u8; 8];
            r.read_exact(&mut b)?;
            Ok(f64::from_le_bytes(b))
        };
        let points: Vec<f64> = (0..n_points).map(|_| read_f64(r)).collect::<Result<_>>()?;
        let draws: Vec<f64> = (0..n_rep * n_points).map(|_| read_f64(r)).collect::<Result<_>>()?;
        Ok(SampleBatch { points, draws, n_rep, seed, sampler_id })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_round_trip() {
        let b = SampleBatch::from_rows(
            vec![0.5, 1.0],
            vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]],
            99,
            SamplerId::Gamma,
        );
        let mut buf = Vec::new();
        b.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 8 + 4 + 4 + 4 + 2 * 8 + 6 * 8);
        let back = SampleBatch::read_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(back.draws, b.draws);
        assert_eq!(back.points, b.points);
        assert_eq!(back.seed, 99);
        assert_eq!(back.sampler_id, SamplerId::Gamma);
        assert_eq!(back.row(1), &[3.0, 4.0]);
        let col: Vec<f64> = back.column(1).collect();
        assert_eq!(col, vec![2.0, 4.0, 6.0]);
    }
}
