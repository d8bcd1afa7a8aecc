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

import os

import numpy as np

from dudf import DudfError


class Image(object):
    """
    8-bit RGB image of shape (height, width, 3).
    """

    def __init__(self, *, pixels):
        pixels = np.asarray(pixels)
        if pixels.ndim != 3 or pixels.shape[2] != 3 or pixels.dtype != np.uint8:
            raise DudfError.value(
                name='Image', argument='pixels', value=(pixels.shape, pixels.dtype)
            )
        self.pixels = pixels

    @staticmethod
    def from_float(colors):
        colors = np.clip(np.asarray(colors, dtype=np.float64), 0.0, 1.0)
        return Image(pixels=np.round(colors * 255.0).astype(np.uint8))

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]


def write_image(image, path):
    """
    Writes a binary PPM (P6, maxval 255).
    """
    header = 'P6\n{} {}\n255\n'.format(image.width, image.height).encode('ascii')
    directory = os.path.dirname(path)
    if directory != '' and not os.path.isdir(directory):
        os.makedirs(directory)
    with open(path, 'wb') as filehandle:
        filehandle.write(header)
        filehandle.write(np.ascontiguousarray(image.pixels).tobytes())
