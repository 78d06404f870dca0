from typing import Dict, Any, Optional, Callable
import traceback

from src.error.errors import IntrinLipError
from src.error.logger import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


class ErrorHandler:
    """Turn exceptions raised inside a CLI command into messages and exit codes."""

    def __init__(self):
        # Error response generators
        self.error_responses = {
            'default': lambda error, context: f"Internal error while running {context.get('command', 'command')}: {error}",
            'invalid_spec': lambda error, context: f"Invalid specification: {error}",
            'invalid_argument': lambda error, context: f"Invalid argument: {error}",
            'degenerate': lambda error, context: f"Sample is degenerate: {error}. Widen the box or raise --samples.",
            'domain': lambda error, context: f"Map evaluated outside its domain: {error}",
            'premise': lambda error, context: f"Premise does not hold on the sample: {error}",
            'internal': lambda error, context: f"Internal error: {error}"
        }

        # Exit codes per error type
        self.exit_codes = {
            'invalid_spec': EXIT_INVALID,
            'invalid_argument': EXIT_INVALID,
            'degenerate': EXIT_INVALID,
            'domain': EXIT_INVALID,
            'premise': EXIT_VIOLATIONS
        }

    def classify(self, error: Exception) -> str:
        """Return the error type used to look up responses and exit codes."""
        if isinstance(error, IntrinLipError):
            return error.error_type
        return 'default'

    def handle_error(self, error: Exception, error_type: Optional[str] = None,
                     context: Optional[Dict[str, Any]] = None) -> str:
        """
        Handle an error and return a user-friendly message.

        Args:
            error: The exception that occurred
            error_type: The type of error (derived from the exception if omitted)
            context: Additional context for error handling

        Returns:
            A user-friendly error message
        """
        error_type = error_type or self.classify(error)

        logger.error(f"Error occurred: {str(error)}")
        if error_type in ('default', 'internal'):
            logger.error(traceback.format_exc())

        response_generator = self.error_responses.get(error_type, self.error_responses['default'])
        return response_generator(error, context or {})

    def exit_code(self, error: Exception) -> int:
        """Exit code for the CLI contract: 2 invalid input, 1 premise violation, 3 internal."""
        return self.exit_codes.get(self.classify(error), EXIT_INTERNAL)

    def add_error_response(self, error_type: str, response_generator: Callable[[Exception, Dict[str, Any]], str],
                           exit_code: Optional[int] = None) -> None:
        """
        Add a custom error response generator.

        Args:
            error_type: The type of error
            response_generator: A function that generates a user-friendly response
            exit_code: Optional exit code for this error type
        """
        self.error_responses[error_type] = response_generator
        if exit_code is not None:
            self.exit_codes[error_type] = exit_code
