"""Classical binary classifiers with a shared fit / predict / predict_proba contract."""
from ._validation import NotFittedError
from .ensemble import (
    AdaBoostClassifier,
    BaggingClassifier,
    ExtraTreesClassifier,
    GradientBoostingClassifier,
    RandomForestClassifier,
)
from .linear import LinearSVM, LogisticRegression
from .naive_bayes import GaussianNB, MultinomialNB
from .neighbors import KNeighborsClassifier
from .serialize import ModelFormatError, load_model, register, save_model
from .tree import DecisionTreeClassifier, DecisionTreeRegressor

CLASSIFIERS = {
    "nb": GaussianNB,
    "mnb": MultinomialNB,
    "lr": LogisticRegression,
    "knn": KNeighborsClassifier,
    "svm": LinearSVM,
    "dt": DecisionTreeClassifier,
    "etc": ExtraTreesClassifier,
    "rf": RandomForestClassifier,
    "gb": GradientBoostingClassifier,
    "ada": AdaBoostClassifier,
    "bag": BaggingClassifier,
}

# the ten variants run by default in benchmarks (MultinomialNB needs count data)
DEFAULT_VARIANTS = ("nb", "lr", "knn", "svm", "dt", "etc", "rf", "gb", "ada", "bag")

for _cls in (*CLASSIFIERS.values(), DecisionTreeRegressor):
    register(_cls)


def make_classifier(name: str, seed: int | None = None, **params):
    """Instantiate a classifier by short name; ``seed`` sets ``random_state`` where it exists."""
    try:
        cls = CLASSIFIERS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown classifier {name!r}; choose from {', '.join(CLASSIFIERS)}") from None
    unknown = sorted(set(params) - set(cls._get_param_names()))
    if unknown:
        raise ValueError(f"{name} does not accept {', '.join(unknown)}; valid: {', '.join(cls._get_param_names())}")
    est = cls(**params)
    if seed is not None and "random_state" in est.get_params():
        est.set_params(random_state=seed)
    return est


__all__ = [
    "CLASSIFIERS",
    "DEFAULT_VARIANTS",
    "AdaBoostClassifier",
    "BaggingClassifier",
    "DecisionTreeClassifier",
    "DecisionTreeRegressor",
    "ExtraTreesClassifier",
    "GaussianNB",
    "GradientBoostingClassifier",
    "KNeighborsClassifier",
    "LinearSVM",
    "LogisticRegression",
    "ModelFormatError",
    "MultinomialNB",
    "NotFittedError",
    "RandomForestClassifier",
    "load_model",
    "make_classifier",
    "register",
    "save_model",
]
