pub struct EstimatingFunctionValue;
pub struct FitOptions;
pub struct GqmleFit;
