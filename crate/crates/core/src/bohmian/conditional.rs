use crate::numerics::{interp, ComplexField1D, JointField2D};
use crate::{Error, Result};

/// Slices whose squared norm `∫|ψ(x, Y)|² dx` falls below this are treated as nodes.
pub const NULL_SLICE_LIMIT: f64 = 1e-14;

/// System wave function obtained by fixing the environment at its actual position.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalWaveFunction {
    pub field: ComplexField1D,
    pub conditioning_point: f64,
}

/// `ψ_C(x) = ψ(x, Y) / ‖ψ(·, Y)‖`, interpolating cubically in `y`.
pub fn conditional_wavefunction(joint: &JointField2D, y: f64) -> Result<ConditionalWaveFunction> {
    let s = joint.grid_y.fractional_index(y);
    let values = (0..joint.grid_x.len())
        .map(|ix| interp::periodic_complex(joint.row(ix), s))
        .collect();
    let mut field = ComplexField1D::new(joint.grid_x, values)?;
    let norm = field.norm_sqr();
    if !(norm > NULL_SLICE_LIMIT) {
        return Err(Error::NullSlice { y, norm });
    }
    field.normalize()?;
    Ok(ConditionalWaveFunction { field, conditioning_point: y })
}
