//! Profunctors as bimodules between finite categories: free bimodules,
//! composition by coequaliser, the tensor of profunctors and the
//! interchange map comparing the two.

mod compose;
mod free;
mod profunctor;
mod tensor;

pub use compose::{associator, bimodule_compose, compose_morphisms, free_composite, induced, left_unitor, right_unitor, Composite, FreeComposite};
pub use free::{counit, free_adjunction_counts, free_bimodule, resolution, verify_resolution, Cell, FreeBimodule, Resolution, ResolutionReport};
pub use profunctor::{enumerate_morphisms, BimoduleMorphism, Layout, Profunctor};
pub use tensor::{interchange, pointwise_product, profunctor_tensor, verify_tensor, Interchange, ProfunctorTensor, TensorCategory, TensorReport};
