pub type Vec3 = [f64; 3];

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Spherical unit vectors expressed in Cartesian components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalBasis {
    pub r: Vec3,
    pub theta: Vec3,
    pub phi: Vec3,
}

pub fn spherical_basis(theta: f64, phi: f64) -> SphericalBasis {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    SphericalBasis {
        r: [st * cp, st * sp, ct],
        theta: [ct * cp, ct * sp, -st],
        phi: [-sp, cp, 0.0],
    }
}

impl SphericalBasis {
    /// Cartesian vector to `(A_r, A_θ, A_φ)`.
    pub fn to_local(&self, v: Vec3) -> Vec3 {
        [dot(v, self.r), dot(v, self.theta), dot(v, self.phi)]
    }

    /// `(A_r, A_θ, A_φ)` to a Cartesian vector.
    pub fn to_cartesian(&self, a: Vec3) -> Vec3 {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = a[0] * self.r[i] + a[1] * self.theta[i] + a[2] * self.phi[i];
        }
        out
    }
}

/// `(r, θ, φ)` from Cartesian `(x, y, z)`.
pub fn cartesian_to_spherical(p: Vec3) -> Vec3 {
    let r = dot(p, p).sqrt();
    if r == 0.0 {
        return [0.0, 0.0, 0.0];
    }
    [r, (p[2] / r).clamp(-1.0, 1.0).acos(), p[1].atan2(p[0])]
}

pub fn spherical_to_cartesian(s: Vec3) -> Vec3 {
    let (st, ct) = s[1].sin_cos();
    let (sp, cp) = s[2].sin_cos();
    [s[0] * st * cp, s[0] * st * sp, s[0] * ct]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn axes() {
        let b = spherical_basis(0.0, 0.0);
        assert_eq!(b.r, [0.0, 0.0, 1.0]);
        let b = spherical_basis(FRAC_PI_2, 0.0);
        assert!((b.r[0] - 1.0).abs() < 1e-15 && b.r[2].abs() < 1e-15);
        assert_eq!(b.phi, [0.0, 1.0, 0.0]);
    }

    #[test]
    fn round_trip_point() {
        let p = [0.3, -1.2, 0.7];
        let q = spherical_to_cartesian(cartesian_to_spherical(p));
        for i in 0..3 {
            assert!((p[i] - q[i]).abs() < 1e-14);
        }
    }
}
