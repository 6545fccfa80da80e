package glide;

import com.bumptech.glide.Glide;

class Banner {
    void show(Object context, Object imageView) {
        Glide.with(context).load("https://cdn.glide.example/images/banner.png").into(imageView);
    }
}
