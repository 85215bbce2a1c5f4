use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::invariants::IcosahedralMap;
use crate::error::{Error, Result};
use crate::geometry3d::SpherePoint;

/// Axis-aligned rectangle of the complex plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let ok = [re_min, re_max, im_min, im_max].iter().all(|x| x.is_finite()) && re_min < re_max && im_min < im_max;
        if !ok {
            return Err(Error::Domain(format!("degenerate window [{re_min}, {re_max}] × [{im_min}, {im_max}]")));
        }
        Ok(Window { re_min, re_max, im_min, im_max })
    }

    /// Parses `re_min,re_max,im_min,im_max`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse("window", e.to_string()))?;
        match parts[..] {
            [a, b, c, d] => Self::new(a, b, c, d),
            _ => Err(Error::parse("window", "expected four comma-separated numbers")),
        }
    }

    /// Center of pixel `(i, j)`, row 0 at the top.
    pub fn pixel_center(&self, i: u32, j: u32, width: u32, height: u32) -> Complex64 {
        let re = self.re_min + (i as f64 + 0.5) / width as f64 * (self.re_max - self.re_min);
        let im = self.im_max - (j as f64 + 0.5) / height as f64 * (self.im_max - self.im_min);
        Complex64::new(re, im)
    }
}

impl Default for Window {
    fn default() -> Self {
        Window { re_min: -2.0, re_max: 2.0, im_min: -2.0, im_max: 2.0 }
    }
}

/// Parses `WIDTHxHEIGHT`.
pub fn parse_resolution(s: &str) -> Result<(u32, u32)> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| Error::parse("resolution", "expected WIDTHxHEIGHT"))?;
    let w: u32 = w.trim().parse().map_err(|_| Error::parse("resolution", format!("bad width {w:?}")))?;
    let h: u32 = h.trim().parse().map_err(|_| Error::parse("resolution", format!("bad height {h:?}")))?;
    if w == 0 || h == 0 {
        return Err(Error::parse("resolution", "must be at least 1x1"));
    }
    Ok((w, h))
}

fn hsl_to_rgb(h: f64, s: f64, l: f64) -> [u8; 3] {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h.rem_euclid(1.0) * 6.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    [r, g, b].map(|v| ((v + m).clamp(0.0, 1.0) * 255.0).round() as u8)
}

/// Lightness before banding: `(2/π)·atan|w|`, so 0 is black and ∞ white.
pub fn base_lightness(w: SpherePoint) -> f64 {
    match w {
        SpherePoint::Infinity => 1.0,
        SpherePoint::Finite(z) => std::f64::consts::FRAC_2_PI * z.norm().atan(),
    }
}

/// Hue from the phase, lightness from the magnitude with contour bands at
/// powers of two.
pub fn color(w: SpherePoint) -> [u8; 3] {
    let z = match w {
        SpherePoint::Infinity => return [255, 255, 255],
        SpherePoint::Finite(z) if !z.is_finite() => return [255, 255, 255],
        SpherePoint::Finite(z) if z.norm() == 0.0 => return [0, 0, 0],
        SpherePoint::Finite(z) => z,
    };
    let l = base_lightness(w);
    let band = z.norm().log2().rem_euclid(1.0) - 0.5;
    let l = (l + 0.1 * band * 4.0 * l * (1.0 - l)).clamp(0.0, 1.0);
    hsl_to_rgb(z.arg() / std::f64::consts::TAU, 1.0, l)
}

/// RGB bytes, row-major from the top row.
pub fn render_pixels(map: &IcosahedralMap, window: &Window, width: u32, height: u32) -> Vec<u8> {
    let rows: Vec<Vec<u8>> = (0..height)
        .into_par_iter()
        .map(|j| {
            (0..width)
                .flat_map(|i| color(map.eval_at(SpherePoint::Finite(window.pixel_center(i, j, width, height)))))
                .collect()
        })
        .collect();
    rows.concat()
}

pub fn encode_ppm(width: u32, height: u32, rgb: &[u8]) -> Vec<u8> {
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(rgb);
    out
}

pub fn encode_png(width: u32, height: u32, rgb: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, width, height);
        enc.set_color(png::ColorType::Rgb);
        enc.set_depth(png::BitDepth::Eight);
        let mut w = enc.write_header().map_err(|e| Error::Io(std::io::Error::other(e)))?;
        w.write_image_data(rgb).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    Ok(out)
}

/// Writes the phase portrait of `ℐ`; `.png` paths get PNG, anything else
/// binary PPM.
pub fn render_phase_portrait(map: &IcosahedralMap, window: &Window, resolution: (u32, u32), out: &Path) -> Result<()> {
    let (w, h) = resolution;
    if w == 0 || h == 0 {
        return Err(Error::Domain("resolution must be at least 1x1".into()));
    }
    let rgb = render_pixels(map, window, w, h);
    let is_png = out.extension().is_some_and(|e| e.eq_ignore_ascii_case("png"));
    let bytes = if is_png { encode_png(w, h, &rgb)? } else { encode_ppm(w, h, &rgb) };
    let mut f = BufWriter::new(File::create(out)?);
    f.write_all(&bytes)?;
    f.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klein::{build_invariants, cp1_configuration, syzygy_constants};

    fn map() -> (IcosahedralMap, crate::klein::Cp1Configuration) {
        let c = cp1_configuration().unwrap();
        let inv = build_invariants(&c).unwrap();
        let s = syzygy_constants(&inv.v, &inv.e, &inv.f).unwrap();
        (IcosahedralMap::new(&inv.v, &inv.f, &s.norm()).unwrap(), c)
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_resolution("64x48").unwrap(), (64, 48));
        assert!(parse_resolution("0x4").is_err());
        assert!(parse_resolution("64").is_err());
        assert_eq!(Window::parse("-1,1,-2,2").unwrap(), Window::new(-1.0, 1.0, -2.0, 2.0).unwrap());
        assert!(Window::parse("1,-1,0,1").is_err());
        assert!(Window::parse("a,b").is_err());
    }

    #[test]
    fn poles_and_zeros() {
        let (m, c) = map();
        for v in c.vertices.iter().filter_map(|v| v.finite()) {
            let near = m.eval_at(SpherePoint::Finite(v + Complex64::new(1e-4, 0.0)));
            assert!(base_lightness(near) > 0.99);
            assert_eq!(color(m.eval_at(SpherePoint::Finite(v))), [255, 255, 255]);
        }
        for f in c.face_centers.iter().filter_map(|v| v.finite()) {
            assert!(base_lightness(m.eval_at(SpherePoint::Finite(f))) < 1e-6);
            assert!(color(m.eval_at(SpherePoint::Finite(f))).iter().all(|&b| b <= 1));
        }
    }

    #[test]
    fn deterministic_files() {
        let (m, _) = map();
        let dir = tempfile::tempdir().unwrap();
        let win = Window::default();
        let mut bytes = Vec::new();
        for name in ["a.ppm", "b.ppm", "c.png"] {
            let p = dir.path().join(name);
            render_phase_portrait(&m, &win, (40, 30), &p).unwrap();
            bytes.push(std::fs::read(p).unwrap());
        }
        assert_eq!(bytes[0], bytes[1]);
        assert!(bytes[0].starts_with(b"P6\n40 30\n255\n"));
        assert_eq!(bytes[0].len(), 13 + 40 * 30 * 3);
        assert!(bytes[2].starts_with(&[0x89, b'P', b'N', b'G']));
        assert!(render_phase_portrait(&m, &win, (4, 4), &dir.path().join("missing/x.ppm")).is_err());
    }
}
