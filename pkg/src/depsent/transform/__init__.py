from .perturber import PerturbationConfig, PerturbationReport, TreebankPerturber, perturb_treebank

__all__ = ["PerturbationConfig", "PerturbationReport", "TreebankPerturber", "perturb_treebank"]
