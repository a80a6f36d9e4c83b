//! Escape-time rendering of Julia sets of the entire models, with optional
//! ray overlays, written as binary PGM (P5) images.
//!
//! The shading is explicitly an escaping-set visualization, not a Julia-set
//! membership test: points that stay bounded within `maxiter` render black
//! whether they are Julia or Fatou. Escaped pixels carry a level
//! `clamp(255·(n+1)/maxiter, 1, 255)` where n is the first exit index, so an
//! escaped pixel is never black. Rendering is deterministic for a fixed
//! configuration, independent of the number of worker threads.

use crate::error::{Error, Result};
use crate::models::{escape_classify, EntireModel};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Environment variable overriding the render thread count.
pub const THREADS_ENV: &str = "TRACTS_THREADS";

pub const OVERLAY_LEVEL: u8 = 254;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RenderSpec {
    /// (re_min, re_max, im_min, im_max)
    pub window: [f64; 4],
    pub width: usize,
    pub height: usize,
    pub escape_radius: f64,
    pub maxiter: u32,
}

impl RenderSpec {
    pub fn validate(&self, model: &EntireModel) -> Result<()> {
        let [a, b, c, d] = self.window;
        if !(a < b && c < d) {
            return Err(Error::InvalidParameter("empty render window".into()));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidParameter("zero image dimensions".into()));
        }
        if !(self.escape_radius > model.singular_bound()) {
            return Err(Error::InvalidParameter(format!(
                "escape radius {} must exceed the singular bound {}",
                self.escape_radius,
                model.singular_bound()
            )));
        }
        if self.maxiter == 0 {
            return Err(Error::InvalidParameter("maxiter must be ≥ 1".into()));
        }
        Ok(())
    }

    /// Center of pixel (i, j); row 0 is the top row (highest imaginary part).
    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        let [re_min, re_max, im_min, im_max] = self.window;
        Complex64::new(
            re_min + (i as f64 + 0.5) * (re_max - re_min) / self.width as f64,
            im_max - (j as f64 + 0.5) * (im_max - im_min) / self.height as f64,
        )
    }

    /// Pixel under a point, if inside the window.
    pub fn pixel_of(&self, z: Complex64) -> Option<(usize, usize)> {
        let [re_min, re_max, im_min, im_max] = self.window;
        if !(re_min..=re_max).contains(&z.re) || !(im_min..=im_max).contains(&z.im) {
            return None;
        }
        let i = ((z.re - re_min) / (re_max - re_min) * self.width as f64) as usize;
        let j = ((im_max - z.im) / (im_max - im_min) * self.height as f64) as usize;
        Some((i.min(self.width - 1), j.min(self.height - 1)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub data: Vec<u8>,
}

fn shade(maxiter: u32, first_exit: Option<u32>) -> u8 {
    match first_exit {
        None => 0,
        Some(n) => {
            let level = (255.0 * (n as f64 + 1.0) / maxiter as f64).round();
            level.clamp(1.0, 255.0) as u8
        }
    }
}

/// Render the escape-time classification of the model over the window.
pub fn render_julia(spec: &RenderSpec, model: &EntireModel) -> Result<Image> {
    spec.validate(model)?;
    let render_rows = || -> Result<Vec<Vec<u8>>> {
        (0..spec.height)
            .into_par_iter()
            .map(|j| {
                let mut row = vec![0u8; spec.width];
                for (i, px) in row.iter_mut().enumerate() {
                    let z = spec.pixel_center(i, j);
                    let r = escape_classify(model, z, spec.escape_radius, spec.maxiter)?;
                    *px = shade(spec.maxiter, r.first_exit);
                }
                Ok(row)
            })
            .collect()
    };
    let rows = match std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Other(format!("thread pool: {e}")))?
            .install(render_rows),
        _ => render_rows(),
    }?;
    let mut data = Vec::with_capacity(spec.width * spec.height);
    for row in rows {
        data.extend_from_slice(&row);
    }
    Ok(Image {
        width: spec.width,
        height: spec.height,
        data,
    })
}

/// Mark the pixels nearest to exp(ray point) at the overlay level.
/// Ray points live in logarithmic coordinates; the rendering plane is the
/// entire function's plane, so points are exponentiated before plotting.
pub fn render_ray_overlay(
    image: &mut Image,
    ray_points: &[(f64, Complex64)],
    spec: &RenderSpec,
) -> usize {
    let mut marked = 0;
    for (_, w) in ray_points {
        if w.re > 700.0 {
            continue;
        }
        let z = w.exp();
        if let Some((i, j)) = spec.pixel_of(z) {
            let px = &mut image.data[j * image.width + i];
            if *px != OVERLAY_LEVEL {
                *px = OVERLAY_LEVEL;
                marked += 1;
            }
        }
    }
    marked
}

/// Binary PGM (P5, maxval 255), top row first.
pub fn write_pgm(image: &Image) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend_from_slice(&image.data);
    out
}

pub fn read_pgm(bytes: &[u8]) -> Result<Image> {
    let header_err = || Error::InvalidParameter("malformed PGM header".into());
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(header_err());
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| header_err())?);
    }
    pos += 1; // single whitespace after maxval
    if fields[0] != "P5" || fields[3] != "255" {
        return Err(header_err());
    }
    let width: usize = fields[1].parse().map_err(|_| header_err())?;
    let height: usize = fields[2].parse().map_err(|_| header_err())?;
    let data = bytes[pos..].to_vec();
    if data.len() != width * height {
        return Err(Error::InvalidParameter(format!(
            "PGM payload has {} bytes, expected {}",
            data.len(),
            width * height
        )));
    }
    Ok(Image {
        width,
        height,
        data,
    })
}
