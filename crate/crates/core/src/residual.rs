pub struct MomentFunction;
pub struct ResidualSet;
