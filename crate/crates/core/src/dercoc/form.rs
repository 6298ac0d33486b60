//! The graded invariant form on a multiloop algebra: the Killing form of
//! the base paired with the degree functional that picks out `z^0`.

use crate::exactnum::Scalar;
use crate::glie::GradedElement;
use crate::multiloop::MultiloopAlgebra;
use crate::rootsys::killing_pair;

/// `(x tensor z^lambda | y tensor z^mu) = kappa(x, y) eps(z^(lambda+mu))`
/// with `eps(z^nu) = delta_{nu,0}`.
pub fn form_l(ml: &MultiloopAlgebra, x: &GradedElement, y: &GradedElement) -> Scalar {
    let xs = ml.to_base_coords(x);
    let ys = ml.to_base_coords(y);
    let mut acc = Scalar::zero();
    for (d, xv) in &xs {
        if let Some(yv) = ys.get(&d.neg()) {
            acc = acc.add(&killing_pair(&ml.base, xv, yv));
        }
    }
    acc
}
