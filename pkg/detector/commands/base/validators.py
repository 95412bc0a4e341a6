"""
Reusable validation utilities for command and run-configuration parameters.
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

ValidationResult = Tuple[bool, Optional[str]]


class Validator(ABC):
    """
    Abstract base class for validators.
    """

    @abstractmethod
    def validate(self, value: Any) -> ValidationResult:
        """
        Validate a value.

        Args:
            value: Value to validate

        Returns:
            tuple: (is_valid, error_message)
        """

    def __call__(self, value: Any) -> ValidationResult:
        return self.validate(value)


class RequiredFieldValidator(Validator):
    """
    Validates that a field is not None or empty.

    Example:
        validator = RequiredFieldValidator("dataset")
        is_valid, error = validator.validate("34-1")
    """

    def __init__(self, field_name: str):
        self.field_name = field_name

    def validate(self, value: Any) -> ValidationResult:
        if value is None:
            return False, f"{self.field_name} is required"

        if isinstance(value, str) and not value.strip():
            return False, f"{self.field_name} cannot be empty"

        if isinstance(value, (list, tuple, dict, set)) and not value:
            return False, f"{self.field_name} cannot be empty"

        return True, None


class PathExistsValidator(Validator):
    """
    Validates that a path (or every path of a list) exists.

    Example:
        validator = PathExistsValidator("capture", must_be_file=True)
        is_valid, error = validator.validate("captures/34-1/conn.log.labeled")
    """

    def __init__(self, field_name: str, must_be_dir: bool = False, must_be_file: bool = False):
        """
        Args:
            field_name: Name of the field being validated
            must_be_dir: Require a directory (prepared dataset folders)
            must_be_file: Require a regular file (capture logs, model files)
        """
        self.field_name = field_name
        self.must_be_dir = must_be_dir
        self.must_be_file = must_be_file

    def _check(self, value: Any) -> ValidationResult:
        path = Path(value)
        if not path.exists():
            return False, f"{self.field_name} does not exist: {path}"
        if self.must_be_dir and not path.is_dir():
            return False, f"{self.field_name} must be a directory: {path}"
        if self.must_be_file and not path.is_file():
            return False, f"{self.field_name} must be a file: {path}"
        return True, None

    def validate(self, value: Any) -> ValidationResult:
        if value is None:
            return False, f"{self.field_name} is required"

        paths = value if isinstance(value, (list, tuple)) else [value]
        for path in paths:
            is_valid, error = self._check(path)
            if not is_valid:
                return False, error

        return True, None


class ChoiceValidator(Validator):
    """
    Validates that a value (or every element of a list) is an allowed choice.

    Example:
        validator = ChoiceValidator("models", MODEL_ORDER)
        is_valid, error = validator.validate(['svm', 'lof'])
    """

    def __init__(self, field_name: str, choices: Iterable[Any]):
        self.field_name = field_name
        self.choices = list(choices)

    def validate(self, value: Any) -> ValidationResult:
        values = value if isinstance(value, (list, tuple)) else [value]
        for item in values:
            if item not in self.choices:
                choices_str = ", ".join(str(c) for c in self.choices)
                return False, f"{self.field_name} must be one of: {choices_str}, got: {item}"

        return True, None


class RangeValidator(Validator):
    """
    Validates that a numeric value lies within a range.

    Example:
        validator = RangeValidator("eval_fraction", min_val=0, max_val=1, exclusive=True)
        is_valid, error = validator.validate(0.2)
    """

    def __init__(
        self,
        field_name: str,
        min_val: Optional[Union[int, float]] = None,
        max_val: Optional[Union[int, float]] = None,
        exclusive: bool = False,
        integer: bool = False,
    ):
        """
        Args:
            field_name: Name of the field being validated
            min_val: Lower bound
            max_val: Upper bound
            exclusive: Bounds themselves are rejected
            integer: Require an int
        """
        self.field_name = field_name
        self.min_val = min_val
        self.max_val = max_val
        self.exclusive = exclusive
        self.integer = integer

    def validate(self, value: Any) -> ValidationResult:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return False, f"{self.field_name} must be numeric, got: {type(value).__name__}"

        if self.integer and not isinstance(value, int):
            return False, f"{self.field_name} must be an integer, got: {value}"

        if self.min_val is not None:
            if value < self.min_val or (self.exclusive and value == self.min_val):
                op = '>' if self.exclusive else '>='
                return False, f"{self.field_name} must be {op} {self.min_val}, got: {value}"

        if self.max_val is not None:
            if value > self.max_val or (self.exclusive and value == self.max_val):
                op = '<' if self.exclusive else '<='
                return False, f"{self.field_name} must be {op} {self.max_val}, got: {value}"

        return True, None


class CompositeValidator(Validator):
    """
    Combines multiple validators with AND logic.

    Example:
        validator = CompositeValidator([
            RequiredFieldValidator("data"),
            PathExistsValidator("data", must_be_dir=True),
        ])
    """

    def __init__(self, validators: List[Validator]):
        self.validators = validators

    def validate(self, value: Any) -> ValidationResult:
        for validator in self.validators:
            is_valid, error = validator.validate(value)
            if not is_valid:
                return False, error

        return True, None


class OptionalValidator(Validator):
    """Passes None; otherwise delegates to the wrapped validator."""

    def __init__(self, validator: Validator):
        self.validator = validator

    def validate(self, value: Any) -> ValidationResult:
        if value is None:
            return True, None
        return self.validator.validate(value)


def validate_all(validations: Dict[str, Tuple[Any, List[Validator]]]) -> ValidationResult:
    """
    Validate multiple fields at once.

    Args:
        validations: Dictionary mapping field names to (value, validators) tuples

    Returns:
        tuple: (all_valid, first_error_message)

    Example:
        is_valid, error = validate_all({
            'seed': (seed, [RangeValidator('seed', min_val=0, integer=True)]),
            'data': (data_dir, [PathExistsValidator('data', must_be_dir=True)]),
        })
    """
    for field_name, (value, validators) in validations.items():
        for validator in validators:
            is_valid, error = validator.validate(value)
            if not is_valid:
                return False, error

    return True, None
