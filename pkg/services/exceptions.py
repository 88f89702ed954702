from typing import Any


class ServiceError(Exception):
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(detail)


class DomainError(ServiceError):
    pass


class InfeasibleDesignError(DomainError):
    pass


class ConfigurationError(ServiceError):
    pass


class DegenerateGeometryError(ServiceError):
    pass


class FitConvergenceError(ServiceError):
    def __init__(self, stage: str, detail: str, last_iterate: Any = None):
        self.stage = stage
        self.last_iterate = last_iterate
        super().__init__(f"{stage}: {detail}")


class FitQualityError(ServiceError):
    def __init__(self, stage: str, detail: str, diagnostics: dict[str, Any] | None = None):
        self.stage = stage
        self.diagnostics = diagnostics or {}
        super().__init__(f"{stage}: {detail}")


class TraceParseError(ServiceError):
    def __init__(self, path: str, line: int | None, detail: str):
        self.path = path
        self.line = line
        location = f"{path}:{line}" if line is not None else path
        super().__init__(f"{location}: {detail}")
