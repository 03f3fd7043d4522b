use nalgebra::DMatrix;
pub struct SigmaHat { pub s11: DMatrix<f64> }
pub struct GammaHat;
pub struct JointFit;
pub fn probe() -> DMatrix<f64> { let m = DMatrix::<f64>::identity(3,3); let e = m.clone().symmetric_eigen(); let _ = e.eigenvalues; m.try_inverse().unwrap() }
