# Copyright 2024 The DUDF Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================


def is_iterable(x):
    if isinstance(x, str):
        return False
    try:
        iter(x)
        return True
    except TypeError:
        return False


class DudfError(Exception):
    """
    DUDF error
    """

    def __init__(self, message, *, path=None):
        if message[0].islower():
            message = message[0].upper() + message[1:]
        if message[-1] not in '.!?':
            message = message + '.'
        # Paths are prefixed verbatim, after normalization
        if path is not None:
            message = '{}: {}'.format(path, message)
        super().__init__(message)
        self.path = path

    @staticmethod
    def unexpected():
        return DudfError(message="Unexpected error!")

    @staticmethod
    def mismatch(name, value1, value2, argument=None):
        if argument is None:
            return DudfError(
                message="{name} mismatch: {value1} <-> {value2}.".format(
                    name=name, value1=value1, value2=value2
                )
            )
        else:
            return DudfError(
                message="{name} mismatch for argument {argument}: {value1} <-> {value2}.".format(
                    name=name, argument=argument, value1=value1, value2=value2
                )
            )

    @staticmethod
    def exists_not(name, value):
        return DudfError(
            message="{name} does not exist: {value}.".format(name=name, value=value)
        )

    @staticmethod
    def required(name, argument, expected=None, condition=None):
        message = "Required {name} argument {argument}".format(name=name, argument=argument)
        if expected is not None:
            message += " to be {expected}".format(expected=expected)
        if condition is not None:
            message += " given {condition}".format(condition=condition)
        return DudfError(message=message + '.')

    @staticmethod
    def invalid(name, argument, condition=None):
        if condition is None:
            return DudfError(
                message="Invalid {name} argument {argument}.".format(name=name, argument=argument)
            )
        else:
            return DudfError(
                message="Invalid {name} argument {argument} given {condition}.".format(
                    name=name, condition=condition, argument=argument
                )
            )

    @staticmethod
    def type(name, argument, dtype, hint=None):
        message = "Invalid type for {name} argument {argument}: {type}".format(
            name=name, argument=argument, type=dtype
        )
        if hint is not None:
            message += " {hint}".format(hint=hint)
        return DudfError(message=message + '.')

    @staticmethod
    def value(name, argument, value, condition=None, hint=None):
        if isinstance(value, dict):
            value = str(value)
        elif is_iterable(x=value):
            value = ','.join(str(x) for x in value)
        message = "Invalid value for {name} argument {argument}".format(
            name=name, argument=argument
        )
        if condition is not None:
            message += " given {condition}".format(condition=condition)
        message += ": {value}".format(value=value)
        if hint is not None:
            message += " {hint}".format(hint=hint)
        return DudfError(message=message + '.')


class FormatError(DudfError):
    """
    Malformed input file, optionally pointing at the offending line.
    """

    def __init__(self, message, *, path=None, line=None):
        if line is not None:
            message = '{} (line {})'.format(message.rstrip('.'), line)
        super().__init__(message, path=path)
        self.line = line


class TrainingError(DudfError):
    """
    Training step failure, carries the iteration index and the responsible loss term.
    """

    def __init__(self, message, *, iteration=None, term=None, index=None):
        context = list()
        if iteration is not None:
            context.append('iteration {}'.format(iteration))
        if term is not None:
            context.append('term {}'.format(term))
        if index is not None:
            context.append('point {}'.format(index))
        if len(context) > 0:
            message = '{} ({})'.format(message.rstrip('.'), ', '.join(context))
        super().__init__(message)
        self.iteration = iteration
        self.term = term
        self.index = index


class CheckpointError(DudfError):
    """
    Unreadable or inconsistent checkpoint file.
    """
