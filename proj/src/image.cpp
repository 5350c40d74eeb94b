//
//  image.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/image.hpp"

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <memory>

#include <jpeglib.h>
#include <png.h>

#include "panobin/errors.hpp"

namespace panobin {

Image read_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.string().c_str()))
        throw IoError("cannot read PNG " + path.string() + ": " + png.message);

    png.format = PNG_FORMAT_RGB;
    Image out(static_cast<int>(png.width), static_cast<int>(png.height));
    if (!png_image_finish_read(&png, nullptr, out.rgb.data(), 0, nullptr)) {
        png_image_free(&png);
        throw IoError("cannot decode PNG " + path.string() + ": " + png.message);
    }
    return out;
}

void write_png(const Image& image, const std::filesystem::path& path) {
    if (image.width <= 0 || image.height <= 0)
        throw InvalidArgumentError("refusing to write empty image");

    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = PNG_FORMAT_RGB;
    // Favor encode speed over ratio; frame sequences are written by the
    // thousand. The setting is fixed, so output stays byte-reproducible.
    png.flags = PNG_IMAGE_FLAG_FAST;
    if (!png_image_write_to_file(&png, path.string().c_str(), 0, image.rgb.data(), 0, nullptr))
        throw IoError("cannot write PNG " + path.string() + ": " + png.message);
}

namespace {

// libjpeg's default error handler exits the process; route errors through
// longjmp back into the caller instead.
struct JpegErrorJump {
    jpeg_error_mgr mgr;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr info) {
    auto* err = reinterpret_cast<JpegErrorJump*>(info->err);
    (*info->err->format_message)(info, err->message);
    std::longjmp(err->jump, 1);
}

} // namespace

Image read_jpeg(const std::filesystem::path& path) {
    std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.string().c_str(), "rb"),
                                               &std::fclose);
    if (!file)
        throw IoError("cannot open JPEG " + path.string());

    jpeg_decompress_struct info{};
    JpegErrorJump err{};
    info.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_error_exit;

    Image out;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&info);
        throw IoError("cannot decode JPEG " + path.string() + ": " + err.message);
    }

    jpeg_create_decompress(&info);
    jpeg_stdio_src(&info, file.get());
    jpeg_read_header(&info, TRUE);
    info.out_color_space = JCS_RGB;
    jpeg_start_decompress(&info);

    out = Image(static_cast<int>(info.output_width), static_cast<int>(info.output_height));
    while (info.output_scanline < info.output_height) {
        JSAMPROW row = out.rgb.data() +
                       static_cast<std::size_t>(info.output_scanline) * info.output_width * 3;
        jpeg_read_scanlines(&info, &row, 1);
    }
    jpeg_finish_decompress(&info);
    jpeg_destroy_decompress(&info);
    return out;
}

Image read_image(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png")
        return read_png(path);
    if (ext == ".jpg" || ext == ".jpeg")
        return read_jpeg(path);
    throw InvalidArgumentError("unsupported image extension '" + ext + "': " + path.string());
}

} // namespace panobin
